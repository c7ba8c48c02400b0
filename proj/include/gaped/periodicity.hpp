// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Period bookkeeping for the sampling mode.
//
// Indexing is 0-based and a row is identified with the x position its
// diagonal edge reads. When a diagonal set D (spread m = max D - min D) has
// been match-only over the 2m rows ending at row i, the regime starts at
// i_pat = i - 2m + 1, the period is g = gcd of the differences of D, the
// pattern is x[i_pat .. i_pat+g-1], and row q is expected to read
// pattern[(q - i_pat) mod g] in x and at offset max D in y.
//
// A transition j is a row whose 2m-row window [j-2m+1 .. j] is consistent
// with the pattern in both strings while row j+1 deviates in one of them.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gaped/queried_string.hpp"
#include "gaped/sampling.hpp"

namespace gaped {

/// gcd of all pairwise differences; throws for fewer than two diagonals.
[[nodiscard]] inline int gcd_of_diffs(std::span<const int> diagonals) {
    if (diagonals.size() < 2) {
        throw std::invalid_argument("need at least two diagonals");
    }
    int g = 0;
    for (std::size_t k = 1; k < diagonals.size(); ++k) {
        g = std::gcd(g, diagonals[k] - diagonals[0]);
    }
    if (g == 0) {
        throw std::invalid_argument("diagonals must be distinct");
    }
    return g;
}

struct PeriodState {
    std::int64_t i_pat = 0;
    int g = 1;
    std::vector<Symbol> pattern;
    int d_min = 0;
    int d_max = 0;

    [[nodiscard]] int m() const noexcept { return d_max - d_min; }
    [[nodiscard]] std::int64_t window() const noexcept { return 2 * static_cast<std::int64_t>(m()); }
    [[nodiscard]] Symbol expected(std::int64_t row) const {
        const std::int64_t k = ((row - i_pat) % g + g) % g;
        return pattern[static_cast<std::size_t>(k)];
    }
};

/// Freezes the regime for a sorted set D with at least two diagonals whose
/// quiet window ends at `last_row`. Reads g characters of x.
[[nodiscard]] inline PeriodState make_period_state(QueriedString& x, std::span<const int> sorted_d, std::int64_t last_row) {
    PeriodState s;
    s.g = gcd_of_diffs(sorted_d);
    s.d_min = sorted_d.front();
    s.d_max = sorted_d.back();
    s.i_pat = last_row - s.window() + 1;
    if (s.i_pat < 0) {
        throw std::out_of_range("period window starts before row 0");
    }
    s.pattern.reserve(static_cast<std::size_t>(s.g));
    for (int k = 0; k < s.g; ++k) {
        s.pattern.push_back(x.read(s.i_pat + k));
    }
    return s;
}

/// x[q] = y[q+d] for every d in D and every q in [i-2m+1 .. i].
[[nodiscard]] inline bool verify_periodicity_window(QueriedString& x, QueriedString& y, std::int64_t i,
                                                   std::span<const int> sorted_d) {
    if (sorted_d.size() < 2) {
        throw std::invalid_argument("need at least two diagonals");
    }
    const std::int64_t m = sorted_d.back() - sorted_d.front();
    const std::int64_t lo = i - 2 * m + 1;
    if (lo < 0 || i >= x.size()) {
        throw std::out_of_range("window outside x");
    }
    for (std::int64_t q = lo; q <= i; ++q) {
        for (int d : sorted_d) {
            if (!chars_match(x, q, y, q + d)) {
                return false;
            }
        }
    }
    return true;
}

/// Row `row` agrees with the pattern in x and, along max D, in y.
[[nodiscard]] inline bool row_consistent(QueriedString& x, QueriedString& y, const PeriodState& s, std::int64_t row) {
    const Symbol p = s.expected(row);
    return symbols_match(x.read(row), p) && symbols_match(y.read(row + s.d_max), p);
}

/// Every row of [r - 2m + 1 .. r] is consistent.
[[nodiscard]] inline bool window_consistent(QueriedString& x, QueriedString& y, const PeriodState& s, std::int64_t r) {
    for (std::int64_t q = r - s.window() + 1; q <= r; ++q) {
        if (!row_consistent(x, y, s, q)) {
            return false;
        }
    }
    return true;
}

/// Binary search for a transition j in [i_pat + 2m - 1, failed_row - 1],
/// given that `failed_row` deviates. Keeps lo with a consistent window and
/// hi with an inconsistent one; adjacent lo, hi means row lo+1 deviates
/// while lo's window holds. Throws std::logic_error when `failed_row` is
/// in fact consistent or lies inside the entry window.
[[nodiscard]] inline std::int64_t find_period_transition(QueriedString& x, QueriedString& y, const PeriodState& s,
                                                         std::int64_t failed_row) {
    std::int64_t lo = s.i_pat + s.window() - 1;
    std::int64_t hi = failed_row;
    if (hi <= lo) {
        throw std::logic_error("deviation inside the entry window");
    }
    if (row_consistent(x, y, s, failed_row)) {
        throw std::logic_error("no deviation at the reported row");
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (window_consistent(x, y, s, mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

struct ChargedDiagonals {
    std::vector<int> charged;
    std::vector<int> uncharged;

    /// The single uncharged diagonal, when there is exactly one.
    [[nodiscard]] std::optional<int> d_star() const {
        if (uncharged.size() == 1) {
            return uncharged.front();
        }
        return std::nullopt;
    }
};

/// Splits D by whether the diagonal mismatches somewhere in rows
/// [j+1 .. j+m], truncated to the rows of x.
[[nodiscard]] inline ChargedDiagonals mismatched_diagonals(QueriedString& x, QueriedString& y, std::int64_t j,
                                                           std::span<const int> sorted_d, int m) {
    ChargedDiagonals out;
    const std::int64_t last = std::min<std::int64_t>(j + m, x.size() - 1);
    for (int d : sorted_d) {
        bool hit = false;
        for (std::int64_t q = j + 1; q <= last && !hit; ++q) {
            hit = !chars_match(x, q, y, q + d);
        }
        (hit ? out.charged : out.uncharged).push_back(d);
    }
    return out;
}

/// Samples rows of [lo, hi] at `rate` and reports whether any sampled row
/// mismatches on diagonal d.
[[nodiscard]] inline bool probe_diagonal(QueriedString& x, QueriedString& y, int d, std::int64_t lo, std::int64_t hi,
                                         double rate, Rng& rng) {
    if (lo > hi) {
        throw std::invalid_argument("empty probe range");
    }
    RowStream rows(rate, Rng(rng()));
    for (std::int64_t r = rows.next_after(lo - 1); r <= hi; r = rows.next_after(r)) {
        if (!chars_match(x, r, y, r + d)) {
            return true;
        }
    }
    return false;
}

}  // namespace gaped
