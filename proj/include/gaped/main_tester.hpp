// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Adaptive two-mode gap tester.
//
// Contiguous mode scans every row with the selective-scan rules. Once the
// active set D has gone 2(max D - min D) rows (at least 2) without a
// mismatch, the tester freezes the period of the region and jumps between
// sampled rows, checking two characters per row against the pattern (or,
// for a single diagonal, against each other). A deviation sends it back to
// contiguous mode after charging the diagonals that must have paid for it.
//
// Unequal lengths are handled by moving the sink to diagonal |y| - |x|; the
// ignore rule and the stopping rule are measured against that diagonal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gaped/alignment.hpp"
#include "gaped/grid_scan.hpp"
#include "gaped/lce.hpp"
#include "gaped/periodicity.hpp"
#include "gaped/queried_string.hpp"
#include "gaped/sampling.hpp"
#include "gaped/verdict.hpp"

namespace gaped {

struct TesterConfig {
    int t = 1;
    /// Gap exponent: sampling rate c_s ln n / t^(1 - epsilon).
    double epsilon = 0.0;
    double c_s = 3.0;
    /// Multiplier of the far threshold; informational, the tester itself
    /// only thresholds at t.
    double far_factor = 13.0;
    std::uint64_t seed = 0;
    bool lce_acceleration = false;
    bool emit_alignment = true;
};

[[nodiscard]] inline double far_threshold(const TesterConfig& cfg) {
    return cfg.far_factor * std::pow(static_cast<double>(cfg.t), 2.0 - cfg.epsilon);
}

/// Rounds are the rows the tester actually processed, in order. Per diagonal
/// it keeps the rounds in which the diagonal was potent and in which it was
/// charged, which is all the certificate needs.
class RunTrace {
  public:
    RunTrace(int t, std::int64_t n, int sink)
        : t_(t), n_(n), sink_(sink), increments_(static_cast<std::size_t>(2 * t + 1)),
          potent_(static_cast<std::size_t>(2 * t + 1)) {}

    /// Round index for `row`, reusing the last round when it is the same row.
    std::int64_t open_round(std::int64_t row) {
        if (rows_.empty() || rows_.back() != row) {
            if (!rows_.empty() && rows_.back() > row) {
                throw std::logic_error("rounds must move forward");
            }
            rows_.push_back(row);
        }
        return static_cast<std::int64_t>(rows_.size()) - 1;
    }

    void mark_potent(std::int64_t round, int d) { push_unique(potent_[slot(d)], round); }
    void mark_increment(std::int64_t round, int d) { push_unique(increments_[slot(d)], round); }

    [[nodiscard]] const std::vector<std::int64_t>& rows() const noexcept { return rows_; }
    [[nodiscard]] int t() const noexcept { return t_; }
    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] int sink() const noexcept { return sink_; }

    [[nodiscard]] bool potent(std::int64_t round, int d) const {
        const auto& v = potent_[slot(d)];
        return std::binary_search(v.begin(), v.end(), round);
    }
    [[nodiscard]] bool incremented(std::int64_t round, int d) const {
        const auto& v = increments_[slot(d)];
        return std::binary_search(v.begin(), v.end(), round);
    }
    /// Cost estimate of diagonal d on entry to `round`.
    [[nodiscard]] int value(std::int64_t round, int d) const {
        const auto& v = increments_[slot(d)];
        return std::abs(d) + static_cast<int>(std::lower_bound(v.begin(), v.end(), round) - v.begin());
    }

  private:
    [[nodiscard]] std::size_t slot(int d) const { return static_cast<std::size_t>(d + t_); }
    static void push_unique(std::vector<std::int64_t>& v, std::int64_t round) {
        if (v.empty() || v.back() != round) {
            v.push_back(round);
        }
    }

    int t_;
    std::int64_t n_;
    int sink_;
    std::vector<std::int64_t> rows_;
    std::vector<std::vector<std::int64_t>> increments_;
    std::vector<std::vector<std::int64_t>> potent_;
};

/// Walks back from the sink through the recorded costs. At each vertex it
/// prefers, in order: a verified match on the same diagonal, an insertion or
/// a deletion that accounts for the cost, a charged substitution, an
/// unread stay. A step the costs cannot account for is reported through
/// `bridged`.
/// Throws std::logic_error when no step is possible at all.
[[nodiscard]] inline SuccinctAlignment emit_alignment(const RunTrace& trace, bool* bridged = nullptr) {
    std::vector<std::int64_t> rows = trace.rows();
    if (rows.empty() || rows.front() != 0) {
        throw std::logic_error("trace must start at row 0");
    }
    rows.push_back(trace.n());
    const int t = trace.t();
    const auto exists = [&](std::int64_t k, int d) { return d >= -t && d <= t && rows[static_cast<std::size_t>(k)] + d >= 0; };
    const auto value = [&](std::int64_t k, int d) { return trace.value(k, d); };

    enum class Step : std::uint8_t { stay, substitution, insertion, deletion };
    struct Move {
        Step step;
        std::int64_t k;  // round reached by the move
        int d;           // diagonal reached by the move
    };
    std::vector<Move> back;
    bool consistent = true;
    std::int64_t k = static_cast<std::int64_t>(rows.size()) - 1;
    int d = trace.sink();
    while (k > 0 || d != 0) {
        if (k == 0) {
            if (d > 0 && exists(0, d - 1)) {
                back.push_back({Step::insertion, 0, d});
                --d;
                continue;
            }
            throw std::logic_error("certificate walked off the grid");
        }
        const int v = value(k, d);
        if (exists(k - 1, d) && trace.potent(k - 1, d) && !trace.incremented(k - 1, d)) {
            back.push_back({Step::stay, k, d});
            --k;
        } else if (exists(k, d - 1) && value(k, d - 1) == v - 1) {
            back.push_back({Step::insertion, k, d});
            --d;
        } else if (exists(k - 1, d + 1) && value(k - 1, d + 1) == v - 1) {
            back.push_back({Step::deletion, k, d});
            --k;
            ++d;
        } else if (exists(k - 1, d) && trace.incremented(k - 1, d)) {
            back.push_back({Step::substitution, k, d});
            --k;
        } else if (exists(k - 1, d)) {
            // Arithmetically a stay always fits; the row itself was not read.
            back.push_back({Step::stay, k, d});
            --k;
        } else {
            consistent = false;
            if (exists(k - 1, d + 1)) {
                back.push_back({Step::deletion, k, d});
                --k;
                ++d;
            } else if (exists(k, d - 1)) {
                back.push_back({Step::insertion, k, d});
                --d;
            } else {
                throw std::logic_error("certificate walked off the grid");
            }
        }
    }

    SuccinctAlignment out;
    out.n = trace.n();
    out.t = t;
    out.sink = trace.sink();
    out.consistent = consistent;
    AlignmentSegment current{0, 0, 0};
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
        const std::int64_t row = rows[static_cast<std::size_t>(it->k)];
        switch (it->step) {
            case Step::stay:
                break;
            case Step::substitution:
                out.events.push_back({rows[static_cast<std::size_t>(it->k - 1)], it->d, EventKind::substitution});
                break;
            case Step::insertion:
                out.events.push_back({row, it->d - 1, EventKind::insertion});
                current.row_last = row;
                out.segments.push_back(current);
                current = {row, row, it->d};
                break;
            case Step::deletion: {
                const std::int64_t from = rows[static_cast<std::size_t>(it->k - 1)];
                out.events.push_back({from, it->d + 1, EventKind::deletion});
                current.row_last = from;
                out.segments.push_back(current);
                current = {from + 1, from + 1, it->d};
                break;
            }
        }
    }
    current.row_last = trace.n();
    out.segments.push_back(current);
    if (bridged != nullptr) {
        *bridged = !consistent;
    }
    return out;
}

enum class RoundKind : std::uint8_t { contiguous, shift_failure, period_failure, fast_forward };

/// Test hook. `on_round` fires after every processed round (passing sampled
/// rows are not rounds) with the diagonal set carried into the next row.
struct NullTesterObserver {
    void on_round(std::int64_t /*row*/, RoundKind /*kind*/, const DiagonalSet& /*next*/) {}
};

namespace detail {

    template <class Observer>
    class MainTester {
      public:
        MainTester(QueriedString& x, QueriedString& y, const TesterConfig& cfg, Observer& observer)
            : observer_(observer), x_(x), y_(y), cfg_(cfg), t_(cfg.t), n_(x.size()), costs_(std::max(cfg.t, 0)),
              trace_(std::max(cfg.t, 0), x.size(), 0),
              rows_(1.0, make_stream(cfg.seed, 1)), probe_rng_(make_stream(cfg.seed, 2)) {}

        Verdict run() {
            if (t_ < 1) {
                throw std::invalid_argument("t must be at least 1");
            }
            verdict_.stats.t_above_sqrt_n = static_cast<double>(t_) * t_ > static_cast<double>(n_);
            const std::int64_t sink = y_.size() - n_;
            if (std::abs(sink) > t_) {
                verdict_.answer = Answer::far;
                verdict_.final_a0 = t_ + 1;
                verdict_.ledger = ledger_snapshot(x_, y_);
                return std::move(verdict_);
            }
            sink_ = static_cast<int>(sink);
            trace_ = RunTrace(t_, n_, sink_);
            rate_ = sampling_rate(n_, t_, cfg_.c_s, cfg_.epsilon);
            rows_ = RowStream(rate_, make_stream(cfg_.seed, 1));
            if (cfg_.lce_acceleration) {
                lce_.emplace(x_, y_, t_);
            }

            const std::int64_t r0 = trace_.open_round(0);
            costs_.mark_potent(0, r0);
            trace_.mark_potent(r0, 0);
            active_ = DiagonalSet::from({0});
            sampling_ = true;
            row_ = 0;
            while (!stopped_ && row_ < n_) {
                if (sampling_) {
                    sampling_round();
                } else {
                    contiguous_round();
                }
            }

            verdict_.final_a0 = costs_[sink_];
            verdict_.answer = (!stopped_ && costs_[sink_] <= t_) ? Answer::close : Answer::far;
            verdict_.ledger = ledger_snapshot(x_, y_);
            if (verdict_.answer == Answer::close && cfg_.emit_alignment) {
                bool bridged = false;
                verdict_.alignment = emit_alignment(trace_, &bridged);
                verdict_.stats.alignment_bridged = bridged;
            }
            return std::move(verdict_);
        }

      private:
        void charge(std::int64_t round, std::int64_t row, int d) {
            costs_.increment(d, round);
            trace_.mark_increment(round, d);
            verdict_.events.push_back({row, d});
            if (d == sink_ && costs_[sink_] > t_) {
                stopped_ = true;
            }
        }

        void mark_potent(std::int64_t round, int d) {
            costs_.mark_potent(d, round);
            trace_.mark_potent(round, d);
        }

        void add_with_neighbors(std::vector<int>& next, int d) const {
            for (int e = d - 1; e <= d + 1; ++e) {
                if (costs_.in_band(e)) {
                    next.push_back(e);
                }
            }
        }

        [[nodiscard]] std::int64_t quiet_window() const {
            return std::max<std::int64_t>(2 * static_cast<std::int64_t>(active_.max() - active_.min()), 2);
        }

        void enter_contiguous(std::vector<int>& next, std::int64_t failed_row, RoundKind kind) {
            active_ = DiagonalSet::from(std::move(next));
            observer_.on_round(failed_row, kind, active_);
            sampling_ = false;
            quiet_ = 0;
            steady_rows_ = 0;
            row_ = failed_row + 1;
            ++verdict_.mode_transitions;
        }

        void enter_sampling(std::int64_t last_row) {
            sampling_ = true;
            ++verdict_.mode_transitions;
            period_.reset();
            if (active_.size() > 1) {
                period_ = make_period_state(x_, active_.values(), last_row);
            }
            row_ = rows_.next_after(last_row);
        }

        void sampling_round() {
            const std::int64_t s = row_;
            ++verdict_.stats.sampled_rows;
            std::vector<int> next;
            if (active_.size() == 1) {
                const int d = active_[0];
                if (chars_match(x_, s, y_, s + d)) {
                    row_ = rows_.next_after(s);
                    return;
                }
                const std::int64_t k = trace_.open_round(s);
                mark_potent(k, d);
                charge(k, s, d);
                add_with_neighbors(next, d);
                enter_contiguous(next, s, RoundKind::shift_failure);
                return;
            }
            if (row_consistent(x_, y_, *period_, s)) {
                row_ = rows_.next_after(s);
                return;
            }
            ++verdict_.stats.binary_searches;
            const std::int64_t j = find_period_transition(x_, y_, *period_, s);
            const ChargedDiagonals split = mismatched_diagonals(x_, y_, j, active_.values(), period_->m());
            const std::int64_t k = trace_.open_round(s);
            for (int d : active_) {
                mark_potent(k, d);
            }
            for (int d : split.charged) {
                charge(k, s, d);
                add_with_neighbors(next, d);
            }
            if (split.uncharged.size() > 1) {
                ++verdict_.stats.multi_uncharged;
            }
            for (int d : split.uncharged) {
                ++verdict_.stats.probes;
                if (probe_diagonal(x_, y_, d, period_->i_pat, s, rate_, probe_rng_)) {
                    charge(k, s, d);
                    add_with_neighbors(next, d);
                } else {
                    next.push_back(d);
                }
            }
            enter_contiguous(next, s, RoundKind::period_failure);
        }

        /// Skips rows on which nothing can change. After two rows with the
        /// same D and no mismatch, every potency test repeats verbatim until
        /// some diagonal mismatches. Stops short of the first mismatch and of the row that
        /// would trigger the switch to sampling.
        bool try_fast_forward() {
            if (!lce_ || steady_rows_ < 2) {
                return false;
            }
            std::int64_t span = std::min(quiet_window() - quiet_, n_ - row_);
            for (int d : active_) {
                if (span == 0) {
                    break;
                }
                span = std::min(span, lce_->extend(row_, d, span));
            }
            if (span <= 0) {
                return false;
            }
            const std::int64_t k = trace_.open_round(row_ + span - 1);
            for (int d : active_) {
                mark_potent(k, d);
            }
            ++verdict_.stats.lce_jumps;
            verdict_.stats.lce_rows_skipped += span;
            verdict_.stats.contiguous_rows += span;
            quiet_ += span;
            steady_rows_ += span;
            row_ += span;
            observer_.on_round(row_ - 1, RoundKind::fast_forward, active_);
            if (row_ < n_ && quiet_ >= quiet_window()) {
                enter_sampling(row_ - 1);
            }
            return true;
        }

        void contiguous_round() {
            if (try_fast_forward()) {
                return;
            }
            const std::int64_t i = row_;
            const std::int64_t k = trace_.open_round(i);
            const std::int64_t prev_row = k > 0 ? trace_.rows()[static_cast<std::size_t>(k - 1)] : -1;
            ++verdict_.stats.contiguous_rows;
            std::vector<int> next;
            bool mismatch = false;
            const DiagonalSet before = active_;
            for (std::size_t cursor = 0; cursor < active_.size(); ++cursor) {
                const int d = active_[cursor];
                if (i + d < 0 || costs_[d] + std::abs(d - sink_) > t_) {
                    continue;
                }
                if (!evaluate_potency(costs_, k, i, prev_row, d).potent) {
                    continue;
                }
                mark_potent(k, d);
                next.push_back(d);
                if (!chars_match(x_, i, y_, i + d)) {
                    mismatch = true;
                    charge(k, i, d);
                    if (stopped_) {
                        return;
                    }
                    if (costs_.in_band(d + 1)) {
                        active_.insert_ahead(cursor, d + 1);
                    }
                    if (costs_.in_band(d - 1)) {
                        next.push_back(d - 1);
                    }
                }
            }
            active_ = DiagonalSet::from(std::move(next));
            observer_.on_round(i, RoundKind::contiguous, active_);
            if (active_.empty()) {
                stopped_ = true;
                return;
            }
            steady_rows_ = (!mismatch && active_ == before) ? steady_rows_ + 1 : 0;
            quiet_ = mismatch ? 0 : quiet_ + 1;
            row_ = i + 1;
            if (row_ < n_ && quiet_ >= quiet_window()) {
                enter_sampling(i);
            }
        }

        Observer& observer_;
        QueriedString& x_;
        QueriedString& y_;
        TesterConfig cfg_;
        int t_;
        std::int64_t n_;
        int sink_ = 0;
        double rate_ = 1.0;
        CostArray costs_;
        RunTrace trace_;
        RowStream rows_;
        Rng probe_rng_;
        std::optional<WindowedLce> lce_;
        DiagonalSet active_;
        std::optional<PeriodState> period_;
        bool sampling_ = true;
        bool stopped_ = false;
        std::int64_t steady_rows_ = 0;
        std::int64_t row_ = 0;
        std::int64_t quiet_ = 0;
        Verdict verdict_;
    };

}  // namespace detail

/// Close with probability 1 when the distance is at most t/2; far with
/// probability at least 2/3 beyond far_factor * t^(2 - epsilon).
template <class Observer>
[[nodiscard]] Verdict run(QueriedString& x, QueriedString& y, const TesterConfig& cfg, Observer& observer) {
    return detail::MainTester<Observer>(x, y, cfg, observer).run();
}

[[nodiscard]] inline Verdict run(QueriedString& x, QueriedString& y, const TesterConfig& cfg) {
    NullTesterObserver observer;
    return run(x, y, cfg, observer);
}

}  // namespace gaped
