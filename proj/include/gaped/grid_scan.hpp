// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Row-by-row selective scan of the grid graph.
//
// Only potent vertices are expanded. A vertex is dominated by an in-neighbor
// (the insertion neighbor (i, d-1) or the deletion neighbor (i-1, d+1)) whose
// cost is one less than its own; it is potent when each dominating neighbor
// is potent and has a mismatch on its own diagonal edge. Non-potent vertices
// keep their cost into the next row, and a potent vertex's cost grows by
// exactly the mismatch indicator, so a single array of per-diagonal costs
// updated in place is enough.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gaped/queried_string.hpp"

namespace gaped {

/// Per-diagonal cost estimates over [-band, band] plus the bookkeeping needed
/// to evaluate potency: for each diagonal, the last round in which it was
/// incremented and the last round in which it was found potent. "Round" is
/// the index of a processed row; a diagonal counts as potent (or incremented)
/// at round k only if the stamp equals k, so nothing is ever cleared.
class CostArray {
  public:
    static constexpr std::int64_t kNever = -1;

    explicit CostArray(int band)
        : band_(checked(band)), values_(static_cast<std::size_t>(2 * band + 1)),
          last_increment_(values_.size(), kNever), last_potent_(values_.size(), kNever) {
        for (int d = -band; d <= band; ++d) {
            values_[slot(d)] = std::abs(d);
        }
    }

    [[nodiscard]] int band() const noexcept { return band_; }
    [[nodiscard]] bool in_band(int d) const noexcept { return d >= -band_ && d <= band_; }
    [[nodiscard]] int operator[](int d) const { return values_[slot(d)]; }

    void increment(int d, std::int64_t round) {
        ++values_[slot(d)];
        last_increment_[slot(d)] = round;
    }
    [[nodiscard]] bool incremented_at(int d, std::int64_t round) const { return last_increment_[slot(d)] == round; }

    /// Cost of diagonal d at the row of `round`, assuming d has not been
    /// touched by any later round.
    [[nodiscard]] int cost_at(int d, std::int64_t round) const {
        return values_[slot(d)] - (incremented_at(d, round) ? 1 : 0);
    }

    void mark_potent(int d, std::int64_t round) { last_potent_[slot(d)] = round; }
    [[nodiscard]] bool potent_at(int d, std::int64_t round) const { return last_potent_[slot(d)] == round; }

  private:
    static int checked(int band) {
        if (band < 0) {
            throw std::invalid_argument("band must be non-negative");
        }
        return band;
    }

    [[nodiscard]] std::size_t slot(int d) const {
        assert(in_band(d));
        return static_cast<std::size_t>(d + band_);
    }

    int band_;
    std::vector<int> values_;
    std::vector<std::int64_t> last_increment_;
    std::vector<std::int64_t> last_potent_;
};

/// Sorted diagonals of one row. The scan may insert ahead of its cursor,
/// never behind it.
class DiagonalSet {
  public:
    DiagonalSet() = default;

    /// Sorts and coalesces duplicates.
    static DiagonalSet from(std::vector<int> diagonals) {
        std::sort(diagonals.begin(), diagonals.end());
        diagonals.erase(std::unique(diagonals.begin(), diagonals.end()), diagonals.end());
        DiagonalSet s;
        s.values_ = std::move(diagonals);
        return s;
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] int operator[](std::size_t k) const { return values_[k]; }
    [[nodiscard]] int min() const { return values_.front(); }
    [[nodiscard]] int max() const { return values_.back(); }
    [[nodiscard]] const std::vector<int>& values() const noexcept { return values_; }
    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }

    [[nodiscard]] bool contains(int d) const { return std::binary_search(values_.begin(), values_.end(), d); }

    /// Inserts d after position `cursor`; d must exceed the element there.
    void insert_ahead(std::size_t cursor, int d) {
        if (cursor >= values_.size() || d <= values_[cursor]) {
            throw std::logic_error("insertion behind the scan cursor");
        }
        auto it = std::lower_bound(values_.begin() + static_cast<std::ptrdiff_t>(cursor) + 1, values_.end(), d);
        if (it == values_.end() || *it != d) {
            values_.insert(it, d);
        }
    }

    friend bool operator==(const DiagonalSet&, const DiagonalSet&) = default;

  private:
    std::vector<int> values_;
};

enum class Domination : std::uint8_t { none = 0, by_left = 1, by_upper_right = 2, both = 3 };

[[nodiscard]] constexpr bool dominated_by_left(Domination d) noexcept {
    return (static_cast<std::uint8_t>(d) & 1U) != 0;
}
[[nodiscard]] constexpr bool dominated_by_upper_right(Domination d) noexcept {
    return (static_cast<std::uint8_t>(d) & 2U) != 0;
}

/// `left` is the cost of (i, d-1), `upper_right` of (i-1, d+1); a missing
/// neighbor never dominates.
[[nodiscard]] constexpr Domination is_dominated(int cost, std::optional<int> left, std::optional<int> upper_right) noexcept {
    std::uint8_t bits = 0;
    if (left && *left == cost - 1) {
        bits |= 1U;
    }
    if (upper_right && *upper_right == cost - 1) {
        bits |= 2U;
    }
    return static_cast<Domination>(bits);
}

struct NeighborStatus {
    bool potent = false;
    /// The neighbor's own diagonal edge (out of that neighbor) mismatches.
    bool mismatch = false;
};

[[nodiscard]] constexpr bool is_potent(Domination dom, NeighborStatus left, NeighborStatus upper_right) noexcept {
    if (dominated_by_left(dom) && !(left.potent && left.mismatch)) {
        return false;
    }
    if (dominated_by_upper_right(dom) && !(upper_right.potent && upper_right.mismatch)) {
        return false;
    }
    return true;
}

struct PotencyVerdict {
    Domination domination = Domination::none;
    bool potent = true;
};

/// Evaluates potency of diagonal d at `round` (located at `row`) from the
/// cost array, before d itself is processed in that round. The previous
/// round sits at `prev_row`. For a potent neighbor, "incremented in its
/// round" is exactly "its diagonal edge mismatched".
[[nodiscard]] inline PotencyVerdict evaluate_potency(const CostArray& a, std::int64_t round, std::int64_t row,
                                                     std::int64_t prev_row, int d) {
    std::optional<int> left;
    std::optional<int> upper_right;
    NeighborStatus left_status;
    NeighborStatus upper_status;
    if (a.in_band(d - 1) && row + d - 1 >= 0) {
        left = a.cost_at(d - 1, round);
        left_status = {a.potent_at(d - 1, round), a.incremented_at(d - 1, round)};
    }
    if (round >= 1 && a.in_band(d + 1) && prev_row + d + 1 >= 0) {
        upper_right = a.cost_at(d + 1, round - 1);
        upper_status = {a.potent_at(d + 1, round - 1), a.incremented_at(d + 1, round - 1)};
    }
    const Domination dom = is_dominated(a[d], left, upper_right);
    return {dom, is_potent(dom, left_status, upper_status)};
}

struct ScanOptions {
    /// Distance budget.
    int t = 0;
    /// Diagonal band; defaults to t.
    std::optional<int> band;
    /// Drop diagonals whose cost plus the distance to the sink diagonal
    /// already exceeds t.
    bool prune = true;
};

struct ScanResult {
    /// Exact distance, or nullopt when it exceeds t.
    std::optional<int> cost;
    std::int64_t rows_scanned = 0;
};

/// Hooks for tests. `on_vertex` fires after each scanned diagonal, including
/// discarded ones; `on_row_end` receives the diagonals found potent in the row.
struct NullScanObserver {
    void on_vertex(std::int64_t /*row*/, int /*d*/, const CostArray& /*a*/) {}
    void on_row_end(std::int64_t /*row*/, const std::vector<int>& /*potent*/, const CostArray& /*a*/) {}
};

/// Exact edit distance when it is at most opts.t. The sink is (|x|, |y|-|x|).
/// Positions past the end of y read as mismatches.
template <class Observer = NullScanObserver>
ScanResult selective_scan(QueriedString& x, QueriedString& y, const ScanOptions& opts, Observer&& observer = {}) {
    if (opts.t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    const int band = opts.band.value_or(opts.t);
    const std::int64_t n = x.size();
    const std::int64_t sink64 = y.size() - n;
    if (std::abs(sink64) > band || std::abs(sink64) > opts.t) {
        return {std::nullopt, 0};
    }
    const int sink = static_cast<int>(sink64);

    CostArray a(band);
    DiagonalSet active = DiagonalSet::from({0});
    std::vector<int> next;
    std::vector<int> potent;
    std::int64_t row = 0;
    for (; row < n; ++row) {
        next.clear();
        potent.clear();
        for (std::size_t cursor = 0; cursor < active.size(); ++cursor) {
            const int d = active[cursor];
            if (opts.prune && a[d] + std::abs(d - sink) > opts.t) {
                observer.on_vertex(row, d, a);
                continue;
            }
            if (!evaluate_potency(a, row, row, row - 1, d).potent) {
                observer.on_vertex(row, d, a);
                continue;
            }
            a.mark_potent(d, row);
            potent.push_back(d);
            next.push_back(d);
            if (!chars_match(x, row, y, row + d)) {
                a.increment(d, row);
                if (a.in_band(d + 1)) {
                    active.insert_ahead(cursor, d + 1);
                }
                if (a.in_band(d - 1)) {
                    next.push_back(d - 1);
                }
            }
            observer.on_vertex(row, d, a);
        }
        observer.on_row_end(row, potent, a);
        if (opts.prune && a[sink] > opts.t) {
            return {std::nullopt, row + 1};
        }
        active = DiagonalSet::from(next);
        if (active.empty()) {
            ++row;
            break;
        }
    }
    if (a[sink] > opts.t) {
        return {std::nullopt, row};
    }
    return {a[sink], row};
}

[[nodiscard]] inline ScanResult selective_scan(QueriedString& x, QueriedString& y, int t) {
    return selective_scan(x, y, ScanOptions{t, std::nullopt, true});
}

}  // namespace gaped
