// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Compact alignment certificates.
//
// An alignment is a monotone path in the grid graph written as a chain of
// single-diagonal runs. Segment (r0, r1, d) walks the diagonal edges leaving
// rows r0..r1-1 on diagonal d. The next segment either starts on the same
// row one diagonal up (an insertion) or one row down on the diagonal below
// (a deletion). Events list the operations the producing algorithm paid for.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "gaped/oracle.hpp"

namespace gaped {

struct AlignmentSegment {
    std::int64_t row_first = 0;
    std::int64_t row_last = 0;
    int d = 0;

    friend bool operator==(const AlignmentSegment&, const AlignmentSegment&) = default;
};

enum class EventKind : std::uint8_t { substitution = 0, insertion = 1, deletion = 2 };

/// `d` is the diagonal the event leaves; insertions move to d+1, deletions
/// to d-1 on the following row.
struct AlignmentEvent {
    std::int64_t row = 0;
    int d = 0;
    EventKind kind = EventKind::substitution;

    friend bool operator==(const AlignmentEvent&, const AlignmentEvent&) = default;
};

struct SuccinctAlignment {
    std::int64_t n = 0;  // rows, i.e. |x|
    int t = 0;           // diagonal band
    int sink = 0;        // |y| - |x|
    std::vector<AlignmentSegment> segments;
    std::vector<AlignmentEvent> events;
    /// False when the producer had to bridge a step its cost bookkeeping did
    /// not explain; the path is still well formed.
    bool consistent = true;

    friend bool operator==(const SuccinctAlignment&, const SuccinctAlignment&) = default;
};

namespace detail {

    class BitWriter {
      public:
        void put(std::uint64_t value, unsigned width) {
            for (unsigned b = 0; b < width; ++b) {
                if (bits_ % 8 == 0) {
                    bytes_.push_back(0);
                }
                if ((value >> b) & 1U) {
                    bytes_.back() = static_cast<std::uint8_t>(bytes_.back() | (1U << (bits_ % 8)));
                }
                ++bits_;
            }
        }
        [[nodiscard]] std::size_t bits() const noexcept { return bits_; }
        [[nodiscard]] std::vector<std::uint8_t> take() { return std::move(bytes_); }

      private:
        std::vector<std::uint8_t> bytes_;
        std::size_t bits_ = 0;
    };

    class BitReader {
      public:
        explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
        std::uint64_t get(unsigned width) {
            std::uint64_t value = 0;
            for (unsigned b = 0; b < width; ++b) {
                if (pos_ / 8 >= bytes_.size()) {
                    throw std::invalid_argument("truncated alignment encoding");
                }
                if ((bytes_[pos_ / 8] >> (pos_ % 8)) & 1U) {
                    value |= std::uint64_t{1} << b;
                }
                ++pos_;
            }
            return value;
        }

      private:
        std::span<const std::uint8_t> bytes_;
        std::size_t pos_ = 0;
    };

    inline constexpr unsigned kHeaderBits = 64 + 32 + 32 + 32 + 32 + 1;

    [[nodiscard]] inline unsigned row_bits(std::int64_t n) {
        return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(n)));
    }
    [[nodiscard]] inline unsigned diagonal_bits(int t) {
        return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(2 * t)));
    }
    [[nodiscard]] inline std::uint32_t zigzag(int v) {
        return (static_cast<std::uint32_t>(v) << 1) ^ static_cast<std::uint32_t>(v >> 31);
    }
    [[nodiscard]] inline int unzigzag(std::uint32_t v) {
        return static_cast<int>(v >> 1) ^ -static_cast<int>(v & 1U);
    }

}  // namespace detail

[[nodiscard]] inline std::size_t encoded_bits(const SuccinctAlignment& a) {
    const unsigned rb = detail::row_bits(a.n);
    const unsigned db = detail::diagonal_bits(a.t);
    return detail::kHeaderBits + a.segments.size() * (2 * rb + db) + a.events.size() * (rb + db + 2);
}

/// Fixed-width bitstream: header, then segments, then events.
[[nodiscard]] inline std::vector<std::uint8_t> encode(const SuccinctAlignment& a) {
    const unsigned rb = detail::row_bits(a.n);
    const unsigned db = detail::diagonal_bits(a.t);
    detail::BitWriter w;
    w.put(static_cast<std::uint64_t>(a.n), 64);
    w.put(static_cast<std::uint32_t>(a.t), 32);
    w.put(detail::zigzag(a.sink), 32);
    w.put(a.segments.size(), 32);
    w.put(a.events.size(), 32);
    w.put(a.consistent ? 1 : 0, 1);
    for (const auto& s : a.segments) {
        w.put(static_cast<std::uint64_t>(s.row_first), rb);
        w.put(static_cast<std::uint64_t>(s.row_last), rb);
        w.put(static_cast<std::uint64_t>(s.d + a.t), db);
    }
    for (const auto& e : a.events) {
        w.put(static_cast<std::uint64_t>(e.row), rb);
        w.put(static_cast<std::uint64_t>(e.d + a.t), db);
        w.put(static_cast<std::uint64_t>(e.kind), 2);
    }
    return w.take();
}

[[nodiscard]] inline SuccinctAlignment decode(std::span<const std::uint8_t> bytes) {
    detail::BitReader r(bytes);
    SuccinctAlignment a;
    a.n = static_cast<std::int64_t>(r.get(64));
    a.t = static_cast<int>(r.get(32));
    a.sink = detail::unzigzag(static_cast<std::uint32_t>(r.get(32)));
    const auto segments = r.get(32);
    const auto events = r.get(32);
    a.consistent = r.get(1) != 0;
    if (a.n < 0 || a.t < 0) {
        throw std::invalid_argument("corrupt alignment header");
    }
    const unsigned rb = detail::row_bits(a.n);
    const unsigned db = detail::diagonal_bits(a.t);
    if ((segments * (2 * rb + db) + events * (rb + db + 2)) > bytes.size() * 8) {
        throw std::invalid_argument("truncated alignment encoding");
    }
    a.segments.resize(segments);
    for (auto& s : a.segments) {
        s.row_first = static_cast<std::int64_t>(r.get(rb));
        s.row_last = static_cast<std::int64_t>(r.get(rb));
        s.d = static_cast<int>(r.get(db)) - a.t;
    }
    a.events.resize(events);
    for (auto& e : a.events) {
        e.row = static_cast<std::int64_t>(r.get(rb));
        e.d = static_cast<int>(r.get(db)) - a.t;
        const auto kind = r.get(2);
        if (kind > 2) {
            throw std::invalid_argument("unknown event kind");
        }
        e.kind = static_cast<EventKind>(kind);
    }
    return a;
}

/// Prices the path against the full inputs: mismatches along every segment's
/// diagonal edges plus one per transition. Positions outside y mismatch.
/// Throws std::invalid_argument on a malformed chain.
[[nodiscard]] inline std::int64_t validate_alignment(const SuccinctAlignment& a, ByteView x, ByteView y) {
    if (a.n != static_cast<std::int64_t>(x.size()) ||
        a.sink != static_cast<std::int64_t>(y.size()) - static_cast<std::int64_t>(x.size())) {
        throw std::invalid_argument("alignment does not match the inputs");
    }
    if (a.segments.empty()) {
        throw std::invalid_argument("empty alignment");
    }
    const auto& first = a.segments.front();
    if (first.row_first != 0 || first.d != 0) {
        throw std::invalid_argument("alignment does not start at the source");
    }
    const auto& last = a.segments.back();
    if (last.row_last != a.n || last.d != a.sink) {
        throw std::invalid_argument("alignment does not end at the sink");
    }
    std::int64_t cost = static_cast<std::int64_t>(a.segments.size()) - 1;
    for (std::size_t k = 0; k < a.segments.size(); ++k) {
        const auto& s = a.segments[k];
        if (s.row_first < 0 || s.row_first > s.row_last || s.row_last > a.n) {
            throw std::invalid_argument("segment rows out of order");
        }
        if (k + 1 < a.segments.size()) {
            const auto& next = a.segments[k + 1];
            const bool insertion = next.d == s.d + 1 && next.row_first == s.row_last;
            const bool deletion = next.d == s.d - 1 && next.row_first == s.row_last + 1;
            if (!insertion && !deletion) {
                throw std::invalid_argument("broken segment chain");
            }
        }
        for (std::int64_t r = s.row_first; r < s.row_last; ++r) {
            const std::int64_t j = r + s.d;
            const bool in_range = j >= 0 && j < static_cast<std::int64_t>(y.size());
            if (!in_range || x[static_cast<std::size_t>(r)] != y[static_cast<std::size_t>(j)]) {
                ++cost;
            }
        }
    }
    return cost;
}

/// Rewrites an explicit edit script as segments. The band is the widest
/// diagonal the script visits (at least |sink|).
[[nodiscard]] inline SuccinctAlignment to_succinct(const Alignment& alignment, std::size_t x_size, std::size_t y_size) {
    SuccinctAlignment out;
    out.n = static_cast<std::int64_t>(x_size);
    out.sink = static_cast<int>(static_cast<std::int64_t>(y_size) - out.n);
    int band = std::abs(out.sink);
    std::int64_t row = 0;
    int d = 0;
    AlignmentSegment current{0, 0, 0};
    for (const auto& op : alignment.ops) {
        switch (op.kind) {
            case EditKind::match:
            case EditKind::substitution:
                if (op.kind == EditKind::substitution) {
                    out.events.push_back({row, d, EventKind::substitution});
                }
                ++row;
                break;
            case EditKind::insertion:
                out.events.push_back({row, d, EventKind::insertion});
                current.row_last = row;
                out.segments.push_back(current);
                ++d;
                current = {row, row, d};
                break;
            case EditKind::deletion:
                out.events.push_back({row, d, EventKind::deletion});
                current.row_last = row;
                out.segments.push_back(current);
                ++row;
                --d;
                current = {row, row, d};
                break;
        }
        band = std::max(band, std::abs(d));
    }
    current.row_last = row;
    out.segments.push_back(current);
    out.t = band;
    return out;
}

}  // namespace gaped
