// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Seeded instance families. The same InstanceSpec always yields the same bytes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gaped/oracle.hpp"
#include "gaped/sampling.hpp"

namespace gaped {

enum class Family : std::uint8_t { random_edits, block_shift, periodic_splice, independent_random };

/// Where periodic_splice puts its pattern breaks.
enum class Placement : std::uint8_t { both, x, y };

NLOHMANN_JSON_SERIALIZE_ENUM(Family, {
                                         {Family::random_edits, "random-edits"},
                                         {Family::block_shift, "block-shift"},
                                         {Family::periodic_splice, "periodic-splice"},
                                         {Family::independent_random, "independent"},
                                     })

NLOHMANN_JSON_SERIALIZE_ENUM(Placement, {
                                            {Placement::both, "both"},
                                            {Placement::x, "x"},
                                            {Placement::y, "y"},
                                        })

[[nodiscard]] inline std::optional<Family> parse_family(std::string_view name) {
    if (name == "random-edits") return Family::random_edits;
    if (name == "block-shift") return Family::block_shift;
    if (name == "periodic-splice") return Family::periodic_splice;
    if (name == "independent") return Family::independent_random;
    return std::nullopt;
}

struct InstanceSpec {
    Family family = Family::random_edits;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    int alphabet = 4;
    /// random_edits: number of edits.
    int k = 0;
    /// block_shift: number of blocks.
    int t = 1;
    /// periodic_splice: period, pattern breaks, placement and y offset
    /// (0 means "use g").
    int g = 4;
    int transitions = 0;
    Placement placement = Placement::both;
    int shift = 0;
    /// independent: resample until the distance provably exceeds this
    /// (0 disables certification).
    std::int64_t far_bound = 0;

    friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(InstanceSpec, family, n, seed, alphabet, k, t, g, transitions, placement,
                                                shift, far_bound)

struct Instance {
    Bytes x;
    Bytes y;
    /// Exact distance, when computed.
    std::optional<std::size_t> distance;
    /// Upper bound implied by the construction.
    std::optional<std::size_t> upper_bound;
    /// The distance is known to exceed this value.
    std::optional<std::size_t> exceeds;
    int resamples = 0;
};

/// Full DP at or below this length.
inline constexpr std::int64_t kExactCeiling = 4096;

namespace detail {

    [[nodiscard]] inline Rng family_rng(std::uint64_t seed, Family f) {
        return make_stream(seed, 100 + static_cast<std::uint32_t>(f));
    }

    [[nodiscard]] inline std::uint8_t symbol(Rng& rng, int alphabet) {
        return static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, alphabet - 1)(rng));
    }

    [[nodiscard]] inline Bytes random_bytes(Rng& rng, std::int64_t n, int alphabet) {
        Bytes out(static_cast<std::size_t>(n));
        for (auto& b : out) {
            b = symbol(rng, alphabet);
        }
        return out;
    }

    inline void check_alphabet(int alphabet) {
        if (alphabet < 2 || alphabet > 256) {
            throw std::invalid_argument("alphabet must lie in [2, 256]");
        }
    }

}  // namespace detail

/// x uniform, y = x after k random insertions, deletions and substitutions.
[[nodiscard]] inline Instance gen_random_edits(std::int64_t n, int k, std::uint64_t seed, int alphabet = 4) {
    detail::check_alphabet(alphabet);
    if (n < 0 || k < 0 || k > n) {
        throw std::invalid_argument("need 0 <= k <= n");
    }
    Rng rng = detail::family_rng(seed, Family::random_edits);
    Instance inst;
    inst.x = detail::random_bytes(rng, n, alphabet);
    inst.y = inst.x;
    for (int e = 0; e < k; ++e) {
        const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
        const auto size = static_cast<std::int64_t>(inst.y.size());
        if (kind == 0 || size == 0) {
            const auto pos = std::uniform_int_distribution<std::int64_t>(0, size)(rng);
            inst.y.insert(inst.y.begin() + pos, detail::symbol(rng, alphabet));
        } else if (kind == 1) {
            const auto pos = std::uniform_int_distribution<std::int64_t>(0, size - 1)(rng);
            inst.y.erase(inst.y.begin() + pos);
        } else {
            const auto pos = std::uniform_int_distribution<std::int64_t>(0, size - 1)(rng);
            const auto bump = std::uniform_int_distribution<int>(1, alphabet - 1)(rng);
            auto& b = inst.y[static_cast<std::size_t>(pos)];
            b = static_cast<std::uint8_t>((b + bump) % alphabet);
        }
    }
    inst.upper_bound = static_cast<std::size_t>(k);
    return inst;
}

/// x uniform; y rotates each of t near-equal blocks of x left by one.
/// Blocks have length floor(n/t) and the last one takes the remainder.
[[nodiscard]] inline Instance gen_block_shift(std::int64_t n, int t, std::uint64_t seed, int alphabet = 4) {
    detail::check_alphabet(alphabet);
    if (t < 1 || n < t) {
        throw std::invalid_argument("need 1 <= t <= n");
    }
    Rng rng = detail::family_rng(seed, Family::block_shift);
    Instance inst;
    inst.x = detail::random_bytes(rng, n, alphabet);
    inst.y = inst.x;
    const std::int64_t len = n / t;
    for (int b = 0; b < t; ++b) {
        const std::int64_t lo = b * len;
        const std::int64_t hi = (b + 1 == t) ? n : lo + len;
        std::rotate(inst.y.begin() + lo, inst.y.begin() + lo + 1, inst.y.begin() + hi);
    }
    inst.upper_bound = static_cast<std::size_t>(2 * t);
    return inst;
}

/// x is a chain of g-periodic stretches. With placement `both` each break
/// starts a fresh pattern in x, and y is x delayed by `shift` positions
/// behind a random prefix, so both strings carry every break. With `x` or
/// `y` the base string stays periodic, y is its delayed copy, and each
/// break is a single substituted symbol in that string only.
[[nodiscard]] inline Instance gen_periodic_splice(std::int64_t n, int g, int transitions, std::uint64_t seed,
                                                  Placement placement = Placement::both, int shift = 0,
                                                  int alphabet = 4) {
    detail::check_alphabet(alphabet);
    if (g < 1 || transitions < 0 || n < static_cast<std::int64_t>(transitions + 1) * g) {
        throw std::invalid_argument("need g >= 1 and room for every periodic stretch");
    }
    const std::int64_t delay = shift > 0 ? shift : g;
    if (delay > n) {
        throw std::invalid_argument("shift longer than the string");
    }
    Rng rng = detail::family_rng(seed, Family::periodic_splice);
    // Break points split [0, n) into transitions+1 stretches of near-equal length.
    std::vector<std::int64_t> breaks;
    for (int b = 1; b <= transitions; ++b) {
        breaks.push_back(n * b / (transitions + 1));
    }
    Bytes base(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> pattern = detail::random_bytes(rng, g, alphabet);
    std::int64_t start = 0;
    std::size_t next_break = 0;
    for (std::int64_t q = 0; q < n; ++q) {
        if (placement == Placement::both && next_break < breaks.size() && q == breaks[next_break]) {
            const std::uint8_t continued = pattern[static_cast<std::size_t>((q - start) % g)];
            do {
                pattern = detail::random_bytes(rng, g, alphabet);
            } while (pattern[0] == continued);
            start = q;
            ++next_break;
        }
        base[static_cast<std::size_t>(q)] = pattern[static_cast<std::size_t>((q - start) % g)];
    }
    Instance inst;
    inst.x = base;
    inst.y = detail::random_bytes(rng, delay, alphabet);
    inst.y.insert(inst.y.end(), base.begin(), base.end() - delay);
    if (placement != Placement::both) {
        Bytes& target = placement == Placement::x ? inst.x : inst.y;
        for (std::int64_t b : breaks) {
            auto& s = target[static_cast<std::size_t>(b)];
            s = static_cast<std::uint8_t>((s + std::uniform_int_distribution<int>(1, alphabet - 1)(rng)) % alphabet);
        }
    }
    inst.upper_bound = static_cast<std::size_t>(2 * delay) + (placement == Placement::both ? 0 : breaks.size());
    return inst;
}

/// Independent uniform strings of length n.
[[nodiscard]] inline Instance gen_independent_random(std::int64_t n, std::uint64_t seed, int alphabet = 4) {
    detail::check_alphabet(alphabet);
    if (n < 0) {
        throw std::invalid_argument("n must be non-negative");
    }
    Rng rng = detail::family_rng(seed, Family::independent_random);
    Instance inst;
    inst.x = detail::random_bytes(rng, n, alphabet);
    inst.y = detail::random_bytes(rng, n, alphabet);
    inst.upper_bound = static_cast<std::size_t>(n);
    return inst;
}

/// Independent pairs, resampled until the distance provably exceeds `bound`.
/// Attempt r uses seed + r; the count of rejected attempts is recorded.
[[nodiscard]] inline Instance gen_far_instance(std::int64_t n, std::int64_t bound, std::uint64_t seed, int alphabet = 4,
                                               int max_attempts = 1000) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Instance inst = gen_independent_random(n, seed + static_cast<std::uint64_t>(attempt), alphabet);
        if (!bounded_edit_distance(inst.x, inst.y, static_cast<std::size_t>(bound))) {
            inst.exceeds = static_cast<std::size_t>(bound);
            inst.resamples = attempt;
            return inst;
        }
    }
    throw std::runtime_error("could not certify a far instance");
}

/// Exact distance up to the DP ceiling, otherwise a banded check against the
/// construction bound.
inline void certify(Instance& inst) {
    const auto n = static_cast<std::int64_t>(std::max(inst.x.size(), inst.y.size()));
    if (n <= kExactCeiling) {
        inst.distance = edit_distance(inst.x, inst.y);
        return;
    }
    if (inst.upper_bound) {
        if (auto d = bounded_edit_distance(inst.x, inst.y, *inst.upper_bound)) {
            inst.distance = *d;
        }
    }
}

[[nodiscard]] inline Instance generate(const InstanceSpec& spec) {
    switch (spec.family) {
        case Family::random_edits:
            return gen_random_edits(spec.n, spec.k, spec.seed, spec.alphabet);
        case Family::block_shift:
            return gen_block_shift(spec.n, spec.t, spec.seed, spec.alphabet);
        case Family::periodic_splice:
            return gen_periodic_splice(spec.n, spec.g, spec.transitions, spec.seed, spec.placement, spec.shift,
                                       spec.alphabet);
        case Family::independent_random:
            if (spec.far_bound > 0) {
                return gen_far_instance(spec.n, spec.far_bound, spec.seed, spec.alphabet);
            }
            return gen_independent_random(spec.n, spec.seed, spec.alphabet);
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace gaped
