// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Row sampling. Each row is kept independently with probability p; the
// stream draws geometric gaps so producing k samples costs O(k) regardless
// of n.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace gaped {

using Rng = std::mt19937_64;

/// min(1, c_s * ln(n) / t^(1 - epsilon)). ln is taken of max(n, 2).
[[nodiscard]] inline double sampling_rate(std::int64_t n, int t, double c_s, double epsilon = 0.0) {
    if (t < 1) {
        throw std::invalid_argument("t must be at least 1");
    }
    if (epsilon < 0.0 || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    }
    const double ln_n = std::log(static_cast<double>(std::max<std::int64_t>(n, 2)));
    const double p = c_s * ln_n / std::pow(static_cast<double>(t), 1.0 - epsilon);
    return std::clamp(p, 0.0, 1.0);
}

/// Derives independent generators from one seed; `stream` selects which.
[[nodiscard]] inline Rng make_stream(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return Rng(seq);
}

/// Lazily realised Bernoulli(p) row set.
class RowStream {
  public:
    RowStream(double p, Rng rng) : p_(p), rng_(std::move(rng)) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("rate must lie in [0, 1]");
        }
    }

    /// Smallest sampled row strictly after `row`. Returns kNone when p = 0.
    [[nodiscard]] std::int64_t next_after(std::int64_t row) {
        if (p_ >= 1.0) {
            return row + 1;
        }
        if (p_ <= 0.0) {
            return kNone;
        }
        std::geometric_distribution<std::int64_t> gap(p_);
        const std::int64_t skip = gap(rng_);
        if (skip > kNone - row - 1) {
            return kNone;
        }
        return row + 1 + skip;
    }

    [[nodiscard]] double rate() const noexcept { return p_; }

    static constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max() / 2;

  private:
    double p_;
    Rng rng_;
};

/// Row 0 plus each row of [1, n] independently at rate min(1, c_s ln n / t).
[[nodiscard]] inline std::vector<std::int64_t> sample_rows(std::int64_t n, int t, double c_s, Rng& rng) {
    const double p = sampling_rate(n, t, c_s);
    std::vector<std::int64_t> rows{0};
    if (p >= 1.0) {
        for (std::int64_t r = 1; r <= n; ++r) {
            rows.push_back(r);
        }
        return rows;
    }
    if (p <= 0.0) {
        return rows;
    }
    std::geometric_distribution<std::int64_t> gap(p);
    for (std::int64_t r = 1 + gap(rng); r <= n; r += 1 + gap(rng)) {
        rows.push_back(r);
    }
    return rows;
}

}  // namespace gaped
