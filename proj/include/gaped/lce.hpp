// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Longest common extension over short windows of x and y.
//
// A block at base b covers x[b, b+5t) and y[b-t, b+6t), which is every y
// position any diagonal in [-t, t] can reach from those rows. Each block is
// indexed with a suffix array, its LCP array and a sparse-table RMQ; a query
// that runs off the end of the block moves on to the next one.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gaped/queried_string.hpp"

namespace gaped {

/// Suffix array, LCP and RMQ over an integer text. Prefix doubling with
/// std::sort: O(L log^2 L), fine for blocks of a few hundred symbols.
class LceIndex {
  public:
    LceIndex() = default;

    explicit LceIndex(std::vector<int> text) : text_(std::move(text)) {
        const std::size_t n = text_.size();
        sa_.resize(n);
        rank_.resize(n);
        std::iota(sa_.begin(), sa_.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            rank_[i] = text_[i];
        }
        std::vector<int> tmp(n);
        for (std::size_t k = 1; n > 1; k <<= 1) {
            const auto key = [&](std::size_t i) {
                return std::pair{rank_[i], i + k < n ? rank_[i + k] : -1};
            };
            std::sort(sa_.begin(), sa_.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
            tmp[sa_[0]] = 0;
            for (std::size_t r = 1; r < n; ++r) {
                tmp[sa_[r]] = tmp[sa_[r - 1]] + (key(sa_[r - 1]) < key(sa_[r]) ? 1 : 0);
            }
            rank_.assign(tmp.begin(), tmp.end());
            if (static_cast<std::size_t>(rank_[sa_[n - 1]]) == n - 1) {
                break;
            }
        }
        build_lcp();
    }

    /// Length of the common prefix of the suffixes at a and b.
    [[nodiscard]] std::size_t lce(std::size_t a, std::size_t b) const {
        if (a == b) {
            return text_.size() - a;
        }
        auto ra = static_cast<std::size_t>(rank_[a]);
        auto rb = static_cast<std::size_t>(rank_[b]);
        if (ra > rb) {
            std::swap(ra, rb);
        }
        // min of lcp_[ra+1 .. rb]
        const std::size_t lo = ra + 1;
        const auto level = static_cast<std::size_t>(std::bit_width(rb - lo + 1) - 1);
        const auto& row = sparse_[level];
        return std::min(row[lo], row[rb + 1 - (std::size_t{1} << level)]);
    }

    [[nodiscard]] std::size_t size() const noexcept { return text_.size(); }

  private:
    void build_lcp() {
        const std::size_t n = text_.size();
        std::vector<std::size_t> lcp(n, 0);
        std::size_t h = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = static_cast<std::size_t>(rank_[i]);
            if (r == 0) {
                h = 0;
                continue;
            }
            const std::size_t j = sa_[r - 1];
            while (i + h < n && j + h < n && text_[i + h] == text_[j + h]) {
                ++h;
            }
            lcp[r] = h;
            if (h > 0) {
                --h;
            }
        }
        sparse_.clear();
        sparse_.push_back(std::move(lcp));
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const auto& prev = sparse_.back();
            std::vector<std::size_t> next(n - len + 1);
            for (std::size_t i = 0; i + len <= n; ++i) {
                next[i] = std::min(prev[i], prev[i + len / 2]);
            }
            sparse_.push_back(std::move(next));
        }
    }

    std::vector<int> text_;
    std::vector<std::size_t> sa_;
    std::vector<int> rank_;
    std::vector<std::vector<std::size_t>> sparse_;
};

class WindowedLce {
  public:
    WindowedLce(QueriedString& x, QueriedString& y, int t)
        : x_(&x), y_(&y), t_(t), block_(5 * static_cast<std::int64_t>(std::max(t, 1))) {
        if (t < 0) {
            throw std::invalid_argument("t must be non-negative");
        }
    }

    /// Number of consecutive rows r = i, i+1, ... with x[r] == y[r+d],
    /// capped at `limit`. Requires |d| <= t.
    [[nodiscard]] std::int64_t extend(std::int64_t i, int d, std::int64_t limit) {
        std::int64_t run = 0;
        while (run < limit) {
            const std::int64_t r = i + run;
            if (r >= x_->size()) {
                break;
            }
            if (!built_ || r < base_ || r >= base_ + block_) {
                build(r);
            }
            const auto xa = static_cast<std::size_t>(r - base_);
            const auto ya = static_cast<std::size_t>(block_ + 1 + (r + d - (base_ - t_)));
            const std::int64_t room = base_ + block_ - r;
            const auto common = static_cast<std::int64_t>(index_.lce(xa, ya));
            const std::int64_t step = std::min(common, room);
            run += step;
            if (step < room) {
                break;
            }
        }
        return std::min(run, limit);
    }

    [[nodiscard]] std::int64_t blocks_built() const noexcept { return blocks_built_; }

  private:
    void build(std::int64_t base) {
        base_ = base;
        std::vector<int> text;
        text.reserve(static_cast<std::size_t>(block_ + 1 + block_ + 2 * t_));
        int sentinel = 256;
        for (std::int64_t q = base; q < base + block_; ++q) {
            const Symbol s = x_->read(q);
            text.push_back(s >= 0 ? s : sentinel++);
        }
        text.push_back(sentinel++);
        for (std::int64_t q = base - t_; q < base + block_ + t_; ++q) {
            const Symbol s = y_->read(q);
            text.push_back(s >= 0 ? s : sentinel++);
        }
        index_ = LceIndex(std::move(text));
        built_ = true;
        ++blocks_built_;
    }

    QueriedString* x_;
    QueriedString* y_;
    std::int64_t t_;
    std::int64_t block_;
    std::int64_t base_ = 0;
    bool built_ = false;
    std::int64_t blocks_built_ = 0;
    LceIndex index_;
};

}  // namespace gaped
