// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Exact reference computations. Everything here reads the inputs directly
// (no ledger) and favors obviously-correct code over speed; the tests use it
// as ground truth for the sublinear testers.
//
// Indexing convention used across the library: rows and positions are
// 0-based. Vertex (i, d) is the pair of prefixes x[0, i) and y[0, i + d).
// The diagonal edge leaving (i, d) compares x[i] with y[i + d].

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gaped {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

namespace detail {

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

[[nodiscard]] inline bool raw_match(ByteView x, std::int64_t i, ByteView y, std::int64_t j) noexcept {
    if (i < 0 || j < 0 || i >= static_cast<std::int64_t>(x.size()) || j >= static_cast<std::int64_t>(y.size())) {
        return false;
    }
    return x[static_cast<std::size_t>(i)] == y[static_cast<std::size_t>(j)];
}

}  // namespace detail

/// Levenshtein distance by the textbook two-row dynamic program.
[[nodiscard]] inline std::size_t edit_distance(ByteView x, ByteView y) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    std::vector<std::size_t> prev(m + 1);
    std::vector<std::size_t> cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        const std::uint8_t xi = x[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (xi == y[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

/// Exact distance when it is at most `bound`, nullopt otherwise.
///
/// Banded DP over diagonals [-bound, bound]; any alignment of cost <= bound
/// stays inside that band. Stops as soon as a whole row exceeds the bound.
[[nodiscard]] inline std::optional<std::size_t> bounded_edit_distance(ByteView x, ByteView y, std::size_t bound) {
    const auto n = static_cast<std::int64_t>(x.size());
    const auto m = static_cast<std::int64_t>(y.size());
    const auto k = static_cast<std::int64_t>(bound);
    if (std::abs(m - n) > k) {
        return std::nullopt;
    }
    const std::size_t width = static_cast<std::size_t>(2 * k + 1);
    std::vector<int> prev(width, detail::kInf);
    std::vector<int> cur(width, detail::kInf);
    auto at = [k](std::vector<int>& row, std::int64_t d) -> int& { return row[static_cast<std::size_t>(d + k)]; };

    for (std::int64_t d = 0; d <= std::min(k, m); ++d) {
        at(prev, d) = static_cast<int>(d);
    }
    for (std::int64_t i = 1; i <= n; ++i) {
        int row_min = detail::kInf;
        for (std::int64_t d = -k; d <= k; ++d) {
            const std::int64_t j = i + d;
            if (j < 0 || j > m) {
                at(cur, d) = detail::kInf;
                continue;
            }
            int best = detail::kInf;
            if (j >= 1) {
                best = at(prev, d) + (x[static_cast<std::size_t>(i - 1)] == y[static_cast<std::size_t>(j - 1)] ? 0 : 1);
            }
            if (d + 1 <= k) {
                best = std::min(best, at(prev, d + 1) + 1);
            }
            if (d - 1 >= -k && j >= 1) {
                best = std::min(best, at(cur, d - 1) + 1);
            }
            at(cur, d) = std::min(best, detail::kInf);
            row_min = std::min(row_min, at(cur, d));
        }
        if (row_min > k) {
            return std::nullopt;
        }
        std::swap(prev, cur);
    }
    const int result = at(prev, m - n);
    if (result > k) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(result);
}

/// Full table of prefix distances, addressed by (row, diagonal).
class GridCosts {
  public:
    GridCosts(ByteView x, ByteView y)
        : n_(static_cast<std::int64_t>(x.size())), m_(static_cast<std::int64_t>(y.size())),
          table_(static_cast<std::size_t>((n_ + 1) * (m_ + 1))) {
        for (std::int64_t j = 0; j <= m_; ++j) {
            cell(0, j) = static_cast<int>(j);
        }
        for (std::int64_t i = 1; i <= n_; ++i) {
            cell(i, 0) = static_cast<int>(i);
            for (std::int64_t j = 1; j <= m_; ++j) {
                const int sub = cell(i - 1, j - 1) + (x[static_cast<std::size_t>(i - 1)] == y[static_cast<std::size_t>(j - 1)] ? 0 : 1);
                cell(i, j) = std::min({sub, cell(i - 1, j) + 1, cell(i, j - 1) + 1});
            }
        }
    }

    [[nodiscard]] std::int64_t rows() const noexcept { return n_; }
    [[nodiscard]] std::int64_t cols() const noexcept { return m_; }

    [[nodiscard]] bool valid(std::int64_t i, std::int64_t d) const noexcept {
        return i >= 0 && i <= n_ && i + d >= 0 && i + d <= m_;
    }

    /// Distance between x[0, i) and y[0, i + d).
    [[nodiscard]] int cost(std::int64_t i, std::int64_t d) const {
        if (!valid(i, d)) {
            throw std::out_of_range("grid vertex outside the grid");
        }
        return table_[static_cast<std::size_t>(i * (m_ + 1) + i + d)];
    }

    [[nodiscard]] int prefix_cost(std::int64_t i, std::int64_t j) const {
        return table_[static_cast<std::size_t>(i * (m_ + 1) + j)];
    }

  private:
    int& cell(std::int64_t i, std::int64_t j) { return table_[static_cast<std::size_t>(i * (m_ + 1) + j)]; }

    std::int64_t n_;
    std::int64_t m_;
    std::vector<int> table_;
};

[[nodiscard]] inline int grid_cost(ByteView x, ByteView y, std::int64_t i, std::int64_t d) {
    if (i < 0 || i > static_cast<std::int64_t>(x.size()) || i + d < 0 || i + d > static_cast<std::int64_t>(y.size())) {
        throw std::out_of_range("grid vertex outside the grid");
    }
    return static_cast<int>(edit_distance(x.first(static_cast<std::size_t>(i)), y.first(static_cast<std::size_t>(i + d))));
}

enum class EditKind : std::uint8_t { match, substitution, deletion, insertion };

/// One step of an alignment. `i` indexes x and `j` indexes y; the unused
/// index is -1 (deletions touch only x, insertions only y).
struct EditOp {
    EditKind kind;
    std::int64_t i;
    std::int64_t j;

    friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct Alignment {
    std::vector<EditOp> ops;

    [[nodiscard]] std::size_t cost() const noexcept {
        return static_cast<std::size_t>(std::count_if(ops.begin(), ops.end(), [](const EditOp& op) { return op.kind != EditKind::match; }));
    }
};

/// Applies the alignment to x. Throws if the ops do not walk x in order or a
/// match claims equal bytes where they differ.
[[nodiscard]] inline Bytes replay(const Alignment& a, ByteView x, ByteView y) {
    Bytes out;
    std::int64_t next_i = 0;
    std::int64_t next_j = 0;
    for (const EditOp& op : a.ops) {
        switch (op.kind) {
        case EditKind::match:
        case EditKind::substitution:
            if (op.i != next_i || op.j != next_j || op.j >= static_cast<std::int64_t>(y.size()) || op.i >= static_cast<std::int64_t>(x.size())) {
                throw std::invalid_argument("alignment out of order");
            }
            if ((op.kind == EditKind::match) != (x[static_cast<std::size_t>(op.i)] == y[static_cast<std::size_t>(op.j)])) {
                throw std::invalid_argument("match/substitution label disagrees with the inputs");
            }
            out.push_back(y[static_cast<std::size_t>(op.j)]);
            ++next_i;
            ++next_j;
            break;
        case EditKind::deletion:
            if (op.i != next_i) {
                throw std::invalid_argument("alignment out of order");
            }
            ++next_i;
            break;
        case EditKind::insertion:
            if (op.j != next_j || op.j >= static_cast<std::int64_t>(y.size())) {
                throw std::invalid_argument("alignment out of order");
            }
            out.push_back(y[static_cast<std::size_t>(op.j)]);
            ++next_j;
            break;
        }
    }
    if (next_i != static_cast<std::int64_t>(x.size())) {
        throw std::invalid_argument("alignment does not consume x");
    }
    return out;
}

/// Backtrace of the full DP. Ties prefer match/substitution, then deletion,
/// then insertion, so the result is deterministic.
[[nodiscard]] inline Alignment optimal_alignment(ByteView x, ByteView y) {
    const GridCosts grid(x, y);
    std::int64_t i = grid.rows();
    std::int64_t j = grid.cols();
    std::vector<EditOp> rev;
    while (i > 0 || j > 0) {
        const int here = grid.prefix_cost(i, j);
        if (i > 0 && j > 0) {
            const bool same = x[static_cast<std::size_t>(i - 1)] == y[static_cast<std::size_t>(j - 1)];
            if (grid.prefix_cost(i - 1, j - 1) + (same ? 0 : 1) == here) {
                rev.push_back({same ? EditKind::match : EditKind::substitution, i - 1, j - 1});
                --i;
                --j;
                continue;
            }
        }
        if (i > 0 && grid.prefix_cost(i - 1, j) + 1 == here) {
            rev.push_back({EditKind::deletion, i - 1, -1});
            --i;
            continue;
        }
        rev.push_back({EditKind::insertion, -1, j - 1});
        --j;
    }
    std::reverse(rev.begin(), rev.end());
    return Alignment{std::move(rev)};
}

/// Potent vertices of the band [-band, band], found by evaluating the
/// definition literally on exact costs of the banded grid graph.
///
/// A vertex (i, d) is dominated by an insertion/deletion in-neighbor whose
/// cost is one less. It is potent when every dominating in-neighbor is itself
/// potent and mismatches on its outgoing diagonal edge. Reads past the end of
/// either string count as mismatches. Test-only: O(n * band) memory.
class BruteForcePotency {
  public:
    BruteForcePotency(ByteView x, ByteView y, std::int64_t band)
        : x_(x), y_(y), n_(static_cast<std::int64_t>(x.size())), m_(static_cast<std::int64_t>(y.size())), band_(band),
          width_(static_cast<std::size_t>(2 * band + 1)), cost_((static_cast<std::size_t>(n_) + 1) * width_, detail::kInf),
          potent_((static_cast<std::size_t>(n_) + 1) * width_, 0) {
        for (std::int64_t i = 0; i <= n_; ++i) {
            for (std::int64_t d = -band_; d <= band_; ++d) {
                if (!valid(i, d)) {
                    continue;
                }
                int best = (i == 0 && d == 0) ? 0 : detail::kInf;
                if (i >= 1 && valid(i - 1, d)) {
                    best = std::min(best, cost(i - 1, d) + (mismatch(i - 1, d) ? 1 : 0));
                }
                if (valid(i, d - 1)) {
                    best = std::min(best, cost(i, d - 1) + 1);
                }
                if (i >= 1 && valid(i - 1, d + 1)) {
                    best = std::min(best, cost(i - 1, d + 1) + 1);
                }
                cost_[index(i, d)] = best;
            }
            for (std::int64_t d = -band_; d <= band_; ++d) {
                if (!valid(i, d)) {
                    continue;
                }
                const int c = cost(i, d);
                bool ok = true;
                if (valid(i, d - 1) && cost(i, d - 1) == c - 1) {
                    ok = ok && potent(i, d - 1) && mismatch(i, d - 1);
                }
                if (i >= 1 && valid(i - 1, d + 1) && cost(i - 1, d + 1) == c - 1) {
                    ok = ok && potent(i - 1, d + 1) && mismatch(i - 1, d + 1);
                }
                potent_[index(i, d)] = ok ? 1 : 0;
            }
        }
    }

    [[nodiscard]] bool valid(std::int64_t i, std::int64_t d) const noexcept {
        return i >= 0 && i <= n_ && d >= -band_ && d <= band_ && i + d >= 0 && i + d <= m_;
    }
    [[nodiscard]] int cost(std::int64_t i, std::int64_t d) const { return cost_[index(i, d)]; }
    [[nodiscard]] bool potent(std::int64_t i, std::int64_t d) const { return valid(i, d) && potent_[index(i, d)] != 0; }

    /// Diagonal edge leaving (i, d) compares x[i] with y[i + d].
    [[nodiscard]] bool mismatch(std::int64_t i, std::int64_t d) const noexcept { return !detail::raw_match(x_, i, y_, i + d); }

    [[nodiscard]] std::vector<int> potent_set(std::int64_t i) const {
        std::vector<int> out;
        for (std::int64_t d = -band_; d <= band_; ++d) {
            if (potent(i, d)) {
                out.push_back(static_cast<int>(d));
            }
        }
        return out;
    }

  private:
    [[nodiscard]] std::size_t index(std::int64_t i, std::int64_t d) const noexcept {
        return static_cast<std::size_t>(i) * width_ + static_cast<std::size_t>(d + band_);
    }

    ByteView x_;
    ByteView y_;
    std::int64_t n_;
    std::int64_t m_;
    std::int64_t band_;
    std::size_t width_;
    std::vector<int> cost_;
    std::vector<std::uint8_t> potent_;
};

[[nodiscard]] inline std::vector<int> brute_force_potent_set(ByteView x, ByteView y, std::int64_t band, std::int64_t row) {
    return BruteForcePotency(x, y, band).potent_set(row);
}

}  // namespace gaped
