// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gaped {

enum class StringLabel : std::uint8_t { x, y };

/// A symbol read from a QueriedString. Negative means out of range.
using Symbol = int;
inline constexpr Symbol kOutOfRange = -1;

/// Out-of-range symbols mismatch everything, including each other.
[[nodiscard]] constexpr bool symbols_match(Symbol a, Symbol b) noexcept {
    return a >= 0 && a == b;
}

/// Read-only view over an input string that records every position it is
/// asked for. All algorithms read their inputs through this type so that the
/// number of distinct probed positions can be measured exactly.
///
/// The ledger is a bitset over [0, size()); it only grows. Reads outside the
/// string return kOutOfRange and leave the ledger untouched.
class QueriedString {
  public:
    QueriedString(std::span<const std::uint8_t> data, StringLabel label)
        : data_(data), label_(label), seen_((data.size() + 63) / 64, 0) {}

    [[nodiscard]] Symbol read(std::int64_t i) {
        if (i < 0 || static_cast<std::uint64_t>(i) >= data_.size()) {
            return kOutOfRange;
        }
        const auto pos = static_cast<std::size_t>(i);
        ++accesses_;
        std::uint64_t& word = seen_[pos >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (pos & 63);
        if ((word & bit) == 0) {
            word |= bit;
            ++distinct_;
        }
        if (trace_enabled_) {
            trace_.push_back(pos);
        }
        return data_[pos];
    }

    [[nodiscard]] std::int64_t size() const noexcept { return static_cast<std::int64_t>(data_.size()); }
    [[nodiscard]] StringLabel label() const noexcept { return label_; }
    [[nodiscard]] std::size_t distinct() const noexcept { return distinct_; }
    [[nodiscard]] std::size_t accesses() const noexcept { return accesses_; }

    [[nodiscard]] bool was_read(std::int64_t i) const noexcept {
        if (i < 0 || static_cast<std::uint64_t>(i) >= data_.size()) {
            return false;
        }
        const auto pos = static_cast<std::size_t>(i);
        return (seen_[pos >> 6] >> (pos & 63)) & 1U;
    }

    /// Records every in-range read in order. Test instrumentation only.
    void enable_trace() { trace_enabled_ = true; }
    [[nodiscard]] const std::vector<std::size_t>& trace() const noexcept { return trace_; }

    /// Bypasses the ledger. Reserved for validation code that prices a
    /// finished certificate against the full inputs.
    [[nodiscard]] std::span<const std::uint8_t> unmetered() const noexcept { return data_; }

  private:
    std::span<const std::uint8_t> data_;
    StringLabel label_;
    std::vector<std::uint64_t> seen_;
    std::size_t distinct_ = 0;
    std::size_t accesses_ = 0;
    bool trace_enabled_ = false;
    std::vector<std::size_t> trace_;
};

struct QueryLedger {
    std::size_t distinct_x = 0;
    std::size_t distinct_y = 0;
    std::size_t total_accesses = 0;

    [[nodiscard]] std::size_t distinct_total() const noexcept { return distinct_x + distinct_y; }
    friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

[[nodiscard]] inline QueryLedger ledger_snapshot(const QueriedString& x, const QueriedString& y) noexcept {
    return {x.distinct(), y.distinct(), x.accesses() + y.accesses()};
}

/// Compares x[i] with y[j] through the ledger.
[[nodiscard]] inline bool chars_match(QueriedString& x, std::int64_t i, QueriedString& y, std::int64_t j) {
    const Symbol a = x.read(i);
    const Symbol b = y.read(j);
    return symbols_match(a, b);
}

}  // namespace gaped
