// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

// gaped: run the testers on files, generate instances, and sweep parameter
// grids. Exit codes: 0 success, 2 bad flags, 3 unreadable or unwritable
// files. Verdicts never change the exit code.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaped/generators.hpp"
#include "gaped/grid_scan.hpp"
#include "gaped/main_tester.hpp"
#include "gaped/oracle.hpp"
#include "gaped/sampled_tester.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

gaped::Bytes read_input(const std::string& path, bool fasta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    gaped::Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!fasta) {
        return raw;
    }
    gaped::Bytes out;
    out.reserve(raw.size());
    bool header = false;
    bool line_start = true;
    for (std::uint8_t c : raw) {
        if (line_start) {
            header = c == '>';
        }
        line_start = c == '\n';
        if (header || c == '\n' || c == '\r') {
            continue;
        }
        out.push_back(c);
    }
    return out;
}

void write_file(const std::filesystem::path& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size))) {
        throw IoError("cannot write " + path.string());
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GAPED_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("GAPED_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v < 1) {
            throw UsageError("bad grid entry '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("empty grid");
    }
    return out;
}

std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// ---------------------------------------------------------------- run

struct RunOptions {
    std::string algo = "main";
    std::string x_path;
    std::string y_path;
    int t = 1;
    double eps = 0.0;
    double c_s = 3.0;
    double far_factor = 13.0;
    std::optional<std::uint64_t> seed;
    bool lce = false;
    bool json = false;
    bool csv = false;
    bool fasta = false;
    bool no_timing = false;
};

Json run_report(const RunOptions& o) {
    const gaped::Bytes xs = read_input(o.x_path, o.fasta);
    const gaped::Bytes ys = read_input(o.y_path, o.fasta);
    const std::uint64_t seed = o.seed.value_or(default_seed());
    if (o.t < 1) {
        throw UsageError("-t must be at least 1");
    }
    if (static_cast<double>(o.t) * o.t > static_cast<double>(xs.size())) {
        std::cerr << "warning: t exceeds sqrt(n); the query bound no longer improves on reading everything\n";
    }
    gaped::QueriedString x(xs, gaped::StringLabel::x);
    gaped::QueriedString y(ys, gaped::StringLabel::y);

    Json report;
    report["schema_version"] = kSchemaVersion;
    report["instance"] = {{"x", o.x_path}, {"y", o.y_path}, {"n_x", xs.size()}, {"n_y", ys.size()}};
    report["algorithm"] = o.algo;
    report["config"] = {{"t", o.t},   {"epsilon", o.eps}, {"c_s", o.c_s}, {"far_factor", o.far_factor},
                        {"lce", o.lce}, {"fasta", o.fasta}};

    const std::int64_t start = now_ns();
    gaped::Verdict v;
    std::optional<std::int64_t> distance;
    if (o.algo == "oracle") {
        const auto d = static_cast<std::int64_t>(gaped::edit_distance(x.unmetered(), y.unmetered()));
        distance = d;
        v.answer = d <= o.t ? gaped::Answer::close : gaped::Answer::far;
        v.final_a0 = static_cast<int>(std::min<std::int64_t>(d, o.t + 1));
        v.ledger = {xs.size(), ys.size(), xs.size() + ys.size()};
    } else if (o.algo == "scan") {
        const auto r = gaped::selective_scan(x, y, o.t);
        if (r.cost) {
            distance = *r.cost;
        }
        v.answer = r.cost ? gaped::Answer::close : gaped::Answer::far;
        v.final_a0 = r.cost.value_or(o.t + 1);
        v.ledger = gaped::ledger_snapshot(x, y);
    } else if (o.algo == "sampled") {
        gaped::Rng rng = gaped::make_stream(seed, 1);
        v = gaped::run_sampled_tester(x, y, o.t, o.c_s, rng);
    } else {
        gaped::TesterConfig cfg;
        cfg.t = o.t;
        cfg.epsilon = o.eps;
        cfg.c_s = o.c_s;
        cfg.far_factor = o.far_factor;
        cfg.seed = seed;
        cfg.lce_acceleration = o.lce;
        v = gaped::run(x, y, cfg);
    }
    const std::int64_t wall = o.no_timing ? 0 : now_ns() - start;

    report["verdict"] = std::string(gaped::to_string(v.answer));
    report["final_a0"] = v.final_a0;
    report["distance"] = distance ? Json(*distance) : Json(nullptr);
    report["distinct_x"] = v.ledger.distinct_x;
    report["distinct_y"] = v.ledger.distinct_y;
    report["total_accesses"] = v.ledger.total_accesses;
    report["mode_transitions"] = v.mode_transitions;
    report["wall_time_ns"] = wall;
    report["seed"] = seed;
    if (o.algo == "main" || o.algo == "sampled") {
        report["stats"] = {{"contiguous_rows", v.stats.contiguous_rows},
                           {"sampled_rows", v.stats.sampled_rows},
                           {"binary_searches", v.stats.binary_searches},
                           {"probes", v.stats.probes},
                           {"multi_uncharged", v.stats.multi_uncharged},
                           {"lce_jumps", v.stats.lce_jumps},
                           {"lce_rows_skipped", v.stats.lce_rows_skipped},
                           {"t_above_sqrt_n", v.stats.t_above_sqrt_n},
                           {"charged_events", v.events.size()}};
    }
    if (v.alignment) {
        const auto& a = *v.alignment;
        report["alignment"] = {{"segments", a.segments.size()},
                               {"events", a.events.size()},
                               {"encoded_bits", gaped::encoded_bits(a)},
                               {"consistent", a.consistent},
                               {"realized_cost", gaped::validate_alignment(a, xs, ys)}};
    }
    return report;
}

void print_run(const Json& r, bool csv) {
    if (!csv) {
        std::cout << r.dump(2) << '\n';
        return;
    }
    std::cout << "schema_version,algorithm,t,seed,verdict,final_a0,distance,distinct_x,distinct_y,total_accesses,"
                 "mode_transitions,wall_time_ns\n";
    std::cout << r["schema_version"] << ',' << r["algorithm"].get<std::string>() << ',' << r["config"]["t"] << ','
              << r["seed"] << ',' << r["verdict"].get<std::string>() << ',' << r["final_a0"] << ','
              << (r["distance"].is_null() ? std::string() : r["distance"].dump()) << ',' << r["distinct_x"] << ','
              << r["distinct_y"] << ',' << r["total_accesses"] << ',' << r["mode_transitions"] << ','
              << r["wall_time_ns"] << '\n';
}

// ---------------------------------------------------------------- gen

void cmd_gen(const gaped::InstanceSpec& spec, const std::string& out_dir) {
    gaped::Instance inst = gaped::generate(spec);
    if (inst.resamples > 0) {
        std::cerr << "resampled " << inst.resamples << " time(s) before certifying distance > " << spec.far_bound
                  << '\n';
    }
    if (!inst.exceeds) {
        gaped::certify(inst);
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir + ": " + ec.message());
    }
    const std::filesystem::path dir(out_dir);
    write_file(dir / "x.bin", inst.x.data(), inst.x.size());
    write_file(dir / "y.bin", inst.y.data(), inst.y.size());
    Json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["spec"] = nlohmann::json(spec);
    meta["n_x"] = inst.x.size();
    meta["n_y"] = inst.y.size();
    meta["upper_bound"] = inst.upper_bound ? Json(*inst.upper_bound) : Json(nullptr);
    meta["distance"] = inst.distance ? Json(*inst.distance) : Json(nullptr);
    meta["exceeds"] = inst.exceeds ? Json(*inst.exceeds) : Json(nullptr);
    meta["resamples"] = inst.resamples;
    const std::string text = meta.dump(2) + "\n";
    write_file(dir / "meta.json", text.data(), text.size());
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
    std::string n_grid = "4096";
    std::string t_grid = "8";
    int trials = 10;
    std::string family = "random-edits";
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    bool no_timing = false;
    double eps = 0.0;
    double c_s = 3.0;
    int g = 4;
    int transitions = 4;
};

/// Per-trial instance for a grid cell. The family parameters are scaled so
/// that close families stay within t/2.
gaped::InstanceSpec bench_spec(gaped::Family family, std::int64_t n, std::int64_t t, std::uint64_t seed,
                               const BenchOptions& o) {
    gaped::InstanceSpec spec;
    spec.family = family;
    spec.n = n;
    spec.seed = seed;
    switch (family) {
        case gaped::Family::random_edits:
            spec.k = static_cast<int>(std::min<std::int64_t>(t / 2, n));
            break;
        case gaped::Family::block_shift:
            spec.t = static_cast<int>(std::clamp<std::int64_t>(t / 4, 1, n));
            break;
        case gaped::Family::periodic_splice:
            spec.g = o.g;
            spec.transitions = o.transitions;
            spec.shift = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(o.g, t / 4)));
            break;
        case gaped::Family::independent_random:
            break;
    }
    return spec;
}

struct TrialResult {
    std::uint64_t queries = 0;
    bool far = false;
    std::int64_t wall_ns = 0;
};

void cmd_bench(const BenchOptions& o) {
    const auto family = gaped::parse_family(o.family);
    if (!family) {
        throw UsageError("unknown family '" + o.family + "'");
    }
    const auto ns = parse_grid(o.n_grid);
    const auto ts = parse_grid(o.t_grid);
    if (o.trials < 0) {
        throw UsageError("--trials must be non-negative");
    }
    const std::uint64_t master = o.seed.value_or(default_seed());
    std::cout << "n,t,family,mean_distinct_queries,p95_queries,far_rate,mean_wall_ns\n";
    if (o.trials == 0) {
        return;
    }
    struct Job {
        std::size_t cell;
        int trial;
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (auto n : ns) {
        for (auto t : ts) {
            cells.emplace_back(n, t);
        }
    }
    const auto trials = static_cast<std::size_t>(o.trials);
    std::vector<TrialResult> results(cells.size() * trials);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t job = next++; job < results.size() && !failed; job = next++) {
            const auto [n, t] = cells[job / trials];
            const auto trial = static_cast<std::uint64_t>(job % trials);
            try {
                // Instance and tester seeds depend only on (master, n, t, trial).
                const std::uint64_t inst_seed = master * 1'000'003ULL + static_cast<std::uint64_t>(n) * 7919ULL +
                                                static_cast<std::uint64_t>(t) * 104'729ULL + trial;
                const gaped::Instance inst = gaped::generate(bench_spec(*family, n, t, inst_seed, o));
                gaped::QueriedString x(inst.x, gaped::StringLabel::x);
                gaped::QueriedString y(inst.y, gaped::StringLabel::y);
                gaped::TesterConfig cfg;
                cfg.t = static_cast<int>(t);
                cfg.epsilon = o.eps;
                cfg.c_s = o.c_s;
                cfg.seed = inst_seed ^ 0x9e3779b97f4a7c15ULL;
                cfg.emit_alignment = false;
                const std::int64_t start = now_ns();
                const gaped::Verdict v = gaped::run(x, y, cfg);
                TrialResult& r = results[job];
                r.wall_ns = o.no_timing ? 0 : now_ns() - start;
                r.queries = v.ledger.distinct_x + v.ledger.distinct_y;
                r.far = v.answer == gaped::Answer::far;
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                failure = e.what();
                failed = true;
            }
        }
    };
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const unsigned count = std::min<std::size_t>(o.threads == 0 ? hw : o.threads, results.size());
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < count; ++k) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failed) {
        throw UsageError(failure);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<std::uint64_t> q;
        double sum_q = 0;
        double sum_wall = 0;
        std::size_t far = 0;
        for (std::size_t k = 0; k < trials; ++k) {
            const auto& r = results[c * trials + k];
            q.push_back(r.queries);
            sum_q += static_cast<double>(r.queries);
            sum_wall += static_cast<double>(r.wall_ns);
            far += r.far ? 1 : 0;
        }
        std::sort(q.begin(), q.end());
        const std::size_t p95 = q[std::min(q.size() - 1, static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(q.size()))) - 1)];
        std::cout << cells[c].first << ',' << cells[c].second << ',' << o.family << ',' << sum_q / static_cast<double>(trials)
                  << ',' << p95 << ',' << static_cast<double>(far) / static_cast<double>(trials) << ','
                  << sum_wall / static_cast<double>(trials) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sublinear gap edit-distance testers"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run one algorithm on a pair of files");
    run_cmd->add_option("--algo", run.algo, "oracle | scan | sampled | main")
        ->check(CLI::IsMember({"oracle", "scan", "sampled", "main"}));
    run_cmd->add_option("--x", run.x_path, "First string (raw bytes)")->required();
    run_cmd->add_option("--y", run.y_path, "Second string (raw bytes)")->required();
    run_cmd->add_option("-t", run.t, "Gap parameter")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--eps", run.eps, "Gap exponent in [0, 1)")->check(CLI::Range(0.0, 0.999999));
    run_cmd->add_option("--c-s", run.c_s, "Sampling constant")->check(CLI::PositiveNumber);
    run_cmd->add_option("--far-factor", run.far_factor, "Far threshold multiplier")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run.seed, "Random seed (default: $GAPED_SEED or 0)");
    run_cmd->add_flag("--lce", run.lce, "Enable longest-common-extension jumps");
    auto* json_flag = run_cmd->add_flag("--json", run.json, "JSON report (default)");
    run_cmd->add_flag("--csv", run.csv, "CSV report")->excludes(json_flag);
    run_cmd->add_flag("--fasta", run.fasta, "Strip '>' header lines and line breaks");
    run_cmd->add_flag("--no-timing", run.no_timing, "Report wall_time_ns as 0");

    gaped::InstanceSpec spec;
    std::string family_name = "random-edits";
    std::string placement_name = "both";
    std::string out_dir;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
    gen_cmd->add_option("--family", family_name, "random-edits | block-shift | periodic-splice | independent")
        ->check(CLI::IsMember({"random-edits", "block-shift", "periodic-splice", "independent"}));
    gen_cmd->add_option("--n", spec.n, "Length of x")->required()->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", spec.seed, "Random seed");
    gen_cmd->add_option("--alphabet", spec.alphabet, "Alphabet size")->check(CLI::Range(2, 256));
    gen_cmd->add_option("--k", spec.k, "random-edits: number of edits");
    gen_cmd->add_option("-t,--blocks", spec.t, "block-shift: number of blocks");
    gen_cmd->add_option("--g", spec.g, "periodic-splice: period");
    gen_cmd->add_option("--transitions", spec.transitions, "periodic-splice: pattern breaks");
    gen_cmd->add_option("--placement", placement_name, "periodic-splice: both | x | y")
        ->check(CLI::IsMember({"both", "x", "y"}));
    gen_cmd->add_option("--shift", spec.shift, "periodic-splice: y delay (0 = g)");
    gen_cmd->add_option("--far-bound", spec.far_bound, "independent: resample until distance exceeds this");
    gen_cmd->add_option("--out", out_dir, "Output directory")->required();

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Sweep the main tester over an (n, t) grid");
    bench_cmd->add_option("--n-grid", bench.n_grid, "Comma-separated lengths");
    bench_cmd->add_option("--t-grid", bench.t_grid, "Comma-separated gap parameters");
    bench_cmd->add_option("--trials", bench.trials, "Trials per cell");
    bench_cmd->add_option("--family", bench.family, "Instance family");
    bench_cmd->add_option("--seed", bench.seed, "Master seed (default: $GAPED_SEED or 0)");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
    bench_cmd->add_option("--eps", bench.eps, "Gap exponent in [0, 1)")->check(CLI::Range(0.0, 0.999999));
    bench_cmd->add_option("--c-s", bench.c_s, "Sampling constant")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--g", bench.g, "periodic-splice: period")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--transitions", bench.transitions, "periodic-splice: pattern breaks");
    bench_cmd->add_flag("--no-timing", bench.no_timing, "Report mean_wall_ns as 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            print_run(run_report(run), run.csv);
        } else if (*gen_cmd) {
            spec.family = *gaped::parse_family(family_name);
            spec.placement = nlohmann::json(placement_name).get<gaped::Placement>();
            cmd_gen(spec, out_dir);
        } else if (*bench_cmd) {
            cmd_bench(bench);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
