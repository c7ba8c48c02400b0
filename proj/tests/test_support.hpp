// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Independent reference code and input generators for the tests. Nothing
// here calls into the library's DP, so library results can be checked
// against it.

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gaped::testing {

using Bytes = std::vector<std::uint8_t>;

inline Bytes bytes(std::string_view s) {
    return {s.begin(), s.end()};
}

inline Bytes random_string(std::mt19937_64& rng, std::size_t n, int alphabet) {
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    Bytes out(n);
    for (auto& b : out) {
        b = static_cast<std::uint8_t>('a' + sym(rng));
    }
    return out;
}

/// Applies k random edits; returns the edited copy.
inline Bytes mutate(std::mt19937_64& rng, Bytes s, int k, int alphabet) {
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    for (int e = 0; e < k; ++e) {
        const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
        if (kind == 0 || s.empty()) {
            const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size())(rng);
            s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<std::uint8_t>('a' + sym(rng)));
        } else if (kind == 1) {
            const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
            s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos));
        } else {
            const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
            s[pos] = static_cast<std::uint8_t>('a' + sym(rng));
        }
    }
    return s;
}

/// Minimum cost over every alignment, by exhaustive recursion over the three
/// moves with no table. Exponential; strings of length <= 7.
inline int exhaustive_distance(const Bytes& x, const Bytes& y, std::size_t i = 0, std::size_t j = 0) {
    if (i == x.size()) {
        return static_cast<int>(y.size() - j);
    }
    if (j == y.size()) {
        return static_cast<int>(x.size() - i);
    }
    const int diag = exhaustive_distance(x, y, i + 1, j + 1) + (x[i] == y[j] ? 0 : 1);
    const int del = exhaustive_distance(x, y, i + 1, j) + 1;
    const int ins = exhaustive_distance(x, y, i, j + 1) + 1;
    return std::min({diag, del, ins});
}

/// Memoised recursion over suffixes, an implementation independent of the
/// library's prefix DP. Fine up to a few hundred symbols.
class SuffixDistance {
  public:
    SuffixDistance(const Bytes& x, const Bytes& y) : x_(x), y_(y), memo_((x.size() + 1) * (y.size() + 1), -1) {}

    int operator()(std::size_t i, std::size_t j) {
        int& slot = memo_[i * (y_.size() + 1) + j];
        if (slot >= 0) {
            return slot;
        }
        if (i == x_.size()) {
            return slot = static_cast<int>(y_.size() - j);
        }
        if (j == y_.size()) {
            return slot = static_cast<int>(x_.size() - i);
        }
        slot = std::min({(*this)(i + 1, j + 1) + (x_[i] == y_[j] ? 0 : 1), (*this)(i + 1, j) + 1, (*this)(i, j + 1) + 1});
        return slot;
    }

  private:
    const Bytes& x_;
    const Bytes& y_;
    std::vector<int> memo_;
};

/// Distance between prefixes x[0, a) and y[0, b), via the reversed strings.
inline int prefix_distance(const Bytes& x, const Bytes& y, std::size_t a, std::size_t b) {
    Bytes xr(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(a));
    Bytes yr(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(b));
    std::reverse(xr.begin(), xr.end());
    std::reverse(yr.begin(), yr.end());
    SuffixDistance sd(xr, yr);
    return sd(0, 0);
}

/// Full prefix-distance table T[i][j] = distance(x[0, i), y[0, j)).
inline std::vector<std::vector<int>> full_table(const Bytes& x, const Bytes& y) {
    std::vector<std::vector<int>> t(x.size() + 1, std::vector<int>(y.size() + 1));
    for (std::size_t i = 0; i <= x.size(); ++i) {
        for (std::size_t j = 0; j <= y.size(); ++j) {
            if (i == 0 || j == 0) {
                t[i][j] = static_cast<int>(i + j);
                continue;
            }
            t[i][j] = std::min({t[i - 1][j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1), t[i - 1][j] + 1, t[i][j - 1] + 1});
        }
    }
    return t;
}

/// Distance when it is at most `bound`, else nullopt. Plain DP over the
/// band |j - i| <= bound, stopping once a whole row exceeds the bound.
inline std::optional<int> banded_distance(const Bytes& x, const Bytes& y, int bound) {
    const auto n = static_cast<std::int64_t>(x.size());
    const auto m = static_cast<std::int64_t>(y.size());
    if (bound < 0 || std::abs(n - m) > bound) {
        return std::nullopt;
    }
    const int inf = bound + 1;
    const std::size_t width = 2 * static_cast<std::size_t>(bound) + 1;
    // Slot k holds column j = i + k - bound.
    std::vector<int> prev(width, inf);
    std::vector<int> cur(width, inf);
    for (int k = bound; k < static_cast<int>(width); ++k) {
        const std::int64_t j = k - bound;
        if (j <= m) {
            prev[static_cast<std::size_t>(k)] = static_cast<int>(j);
        }
    }
    for (std::int64_t i = 1; i <= n; ++i) {
        int row_min = inf;
        for (int k = 0; k < static_cast<int>(width); ++k) {
            const std::int64_t j = i + k - bound;
            int v = inf;
            if (j >= 0 && j <= m) {
                if (j == 0) {
                    v = static_cast<int>(i);
                } else {
                    v = prev[static_cast<std::size_t>(k)] + (x[static_cast<std::size_t>(i - 1)] == y[static_cast<std::size_t>(j - 1)] ? 0 : 1);
                    if (k + 1 < static_cast<int>(width)) {
                        v = std::min(v, prev[static_cast<std::size_t>(k + 1)] + 1);
                    }
                    if (k > 0) {
                        v = std::min(v, cur[static_cast<std::size_t>(k - 1)] + 1);
                    }
                }
                v = std::min(v, inf);
            }
            cur[static_cast<std::size_t>(k)] = v;
            row_min = std::min(row_min, v);
        }
        if (row_min > bound) {
            return std::nullopt;
        }
        std::swap(prev, cur);
    }
    const int result = prev[static_cast<std::size_t>(m - n + bound)];
    if (result > bound) {
        return std::nullopt;
    }
    return result;
}

/// Smallest p such that s[q] == s[q+p] for all valid q.
inline std::size_t smallest_period(const Bytes& s) {
    for (std::size_t p = 1; p <= s.size(); ++p) {
        bool ok = true;
        for (std::size_t q = 0; q + p < s.size() && ok; ++q) {
            ok = s[q] == s[q + p];
        }
        if (ok) {
            return p;
        }
    }
    return s.size();
}

inline bool has_period(const Bytes& s, std::size_t p) {
    for (std::size_t q = 0; q + p < s.size(); ++q) {
        if (s[q] != s[q + p]) {
            return false;
        }
    }
    return true;
}

}  // namespace gaped::testing
