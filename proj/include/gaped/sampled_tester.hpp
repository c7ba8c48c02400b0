// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Asymmetric warm-up tester: keep a random subset of rows of the grid graph
// and threshold the shortest source-to-sink path in the resulting graph.
//
// Between consecutive kept rows r < r' a diagonal costs the single indicator
// [x[r] != y[r+d]]; moving to d+1 within a row or to d-1 on the next kept row
// costs 1; the last kept row reaches the sink (n, |y|-|x|) at the diagonal
// distance. x is read only on kept rows, y possibly everywhere.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gaped/queried_string.hpp"
#include "gaped/sampling.hpp"
#include "gaped/verdict.hpp"

namespace gaped {

struct SampledGrid {
    std::vector<std::int64_t> rows;
    int t = 0;
    std::int64_t n = 0;
    int sink = 0;
};

[[nodiscard]] inline SampledGrid make_sampled_grid(std::vector<std::int64_t> rows, int t, std::int64_t n, int sink) {
    if (t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    if (rows.empty() || rows.front() != 0) {
        throw std::invalid_argument("row 0 must be sampled");
    }
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k] <= rows[k - 1] || rows[k] > n) {
            throw std::invalid_argument("sampled rows must increase within [0, n]");
        }
    }
    return {std::move(rows), t, n, sink};
}

/// Shortest path cost in the sampled graph, exact when at most t and
/// reported as t+1 otherwise. Diagonals already above t are not compared.
[[nodiscard]] inline int shortest_path_cost(const SampledGrid& g, QueriedString& x, QueriedString& y) {
    const int t = g.t;
    const int cap = t + 1;
    const auto slot = [t](int d) { return static_cast<std::size_t>(d + t); };
    std::vector<int> cost(static_cast<std::size_t>(2 * t + 1), cap);
    std::vector<int> next(cost.size(), cap);
    const auto insertion_pass = [&](std::vector<int>& c) {
        for (int d = -t + 1; d <= t; ++d) {
            c[slot(d)] = std::min(c[slot(d)], c[slot(d - 1)] + 1);
        }
        for (int& v : c) {
            v = std::min(v, cap);
        }
    };
    cost[slot(0)] = 0;
    insertion_pass(cost);
    for (std::size_t k = 0; k + 1 < g.rows.size(); ++k) {
        const std::int64_t r = g.rows[k];
        for (int d = -t; d <= t; ++d) {
            int best = cap;
            if (cost[slot(d)] < cap) {
                best = cost[slot(d)] + (chars_match(x, r, y, r + d) ? 0 : 1);
            }
            if (d < t) {
                best = std::min(best, cost[slot(d + 1)] + 1);
            }
            next[slot(d)] = best;
        }
        insertion_pass(next);
        std::swap(cost, next);
    }
    int best = cap;
    for (int d = -t; d <= t; ++d) {
        best = std::min(best, cost[slot(d)] + std::abs(d - g.sink));
    }
    return std::min(best, cap);
}

/// Close iff the sampled shortest path costs at most t.
[[nodiscard]] inline Verdict run_sampled_tester(QueriedString& x, QueriedString& y, int t, double c_s, Rng& rng) {
    if (t < 1) {
        throw std::invalid_argument("t must be at least 1");
    }
    const std::int64_t n = x.size();
    const std::int64_t sink = y.size() - n;
    Verdict v;
    v.stats.t_above_sqrt_n = static_cast<double>(t) * t > static_cast<double>(n);
    if (std::abs(sink) > t) {
        v.answer = Answer::far;
        v.final_a0 = t + 1;
        v.ledger = ledger_snapshot(x, y);
        return v;
    }
    const SampledGrid g = make_sampled_grid(sample_rows(n, t, c_s, rng), t, n, static_cast<int>(sink));
    v.stats.sampled_rows = static_cast<std::int64_t>(g.rows.size());
    v.final_a0 = shortest_path_cost(g, x, y);
    v.answer = v.final_a0 <= t ? Answer::close : Answer::far;
    v.ledger = ledger_snapshot(x, y);
    return v;
}

}  // namespace gaped
