// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <gtest/gtest.h>

#include "gaped/grid_scan.hpp"
#include "gaped/queried_string.hpp"
#include "test_support.hpp"

namespace gaped {
namespace {

    using testing::bytes;

    TEST(QueriedString, ReadInRangeRecordsPosition) {
        const auto data = bytes("abc");
        QueriedString s(data, StringLabel::x);
        EXPECT_EQ(s.read(1), 'b');
        EXPECT_TRUE(s.was_read(1));
        EXPECT_EQ(s.distinct(), 1U);
    }

    TEST(QueriedString, OutOfRangeLeavesLedgerAlone) {
        const auto data = bytes("abc");
        QueriedString s(data, StringLabel::x);
        EXPECT_EQ(s.read(5), kOutOfRange);
        EXPECT_EQ(s.read(-1), kOutOfRange);
        EXPECT_EQ(s.distinct(), 0U);
        EXPECT_EQ(s.accesses(), 0U);
        EXPECT_FALSE(s.was_read(5));
    }

    TEST(QueriedString, RepeatedReadCountsOnceDistinct) {
        const auto data = bytes("abc");
        QueriedString s(data, StringLabel::x);
        (void)s.read(0);
        (void)s.read(0);
        EXPECT_EQ(s.distinct(), 1U);
        EXPECT_EQ(s.accesses(), 2U);
    }

    TEST(QueriedString, OutOfRangeNeverMatches) {
        EXPECT_FALSE(symbols_match(kOutOfRange, kOutOfRange));
        EXPECT_FALSE(symbols_match(kOutOfRange, 'a'));
        EXPECT_FALSE(symbols_match('a', kOutOfRange));
        EXPECT_TRUE(symbols_match('a', 'a'));
        const auto data = bytes("a");
        QueriedString x(data, StringLabel::x);
        QueriedString y(data, StringLabel::y);
        EXPECT_FALSE(chars_match(x, 3, y, 4));
        EXPECT_FALSE(chars_match(x, 0, y, 1));
        EXPECT_TRUE(chars_match(x, 0, y, 0));
    }

    TEST(LedgerSnapshot, FreshStringsAreZero) {
        const auto data = bytes("hello");
        QueriedString x(data, StringLabel::x);
        QueriedString y(data, StringLabel::y);
        EXPECT_EQ(ledger_snapshot(x, y), (QueryLedger{0, 0, 0}));
    }

    TEST(LedgerSnapshot, CountsDistinctPerString) {
        const auto data = bytes("hello");
        QueriedString x(data, StringLabel::x);
        QueriedString y(data, StringLabel::y);
        (void)x.read(0);
        (void)x.read(0);
        (void)y.read(3);
        const QueryLedger l = ledger_snapshot(x, y);
        EXPECT_EQ(l.distinct_x, 1U);
        EXPECT_EQ(l.distinct_y, 1U);
        EXPECT_EQ(l.total_accesses, 3U);
    }

    TEST(LedgerSnapshot, SaturatesAtLength) {
        const auto data = bytes("hello");
        QueriedString x(data, StringLabel::x);
        QueriedString y(data, StringLabel::y);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::int64_t i = 0; i < x.size(); ++i) {
                (void)x.read(i);
            }
        }
        EXPECT_EQ(ledger_snapshot(x, y).distinct_x, 5U);
        EXPECT_EQ(ledger_snapshot(x, y).total_accesses, 10U);
    }

    // The ledger agrees with an independent trace of every dereference made
    // by a real algorithm run.
    TEST(QueriedString, LedgerMatchesShadowTrace) {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = testing::random_string(rng, 300, 3);
            const auto b = testing::mutate(rng, a, 6, 3);
            QueriedString x(a, StringLabel::x);
            QueriedString y(b, StringLabel::y);
            x.enable_trace();
            y.enable_trace();
            (void)selective_scan(x, y, 8);
            const std::set<std::size_t> sx(x.trace().begin(), x.trace().end());
            const std::set<std::size_t> sy(y.trace().begin(), y.trace().end());
            const QueryLedger l = ledger_snapshot(x, y);
            EXPECT_EQ(l.distinct_x, sx.size());
            EXPECT_EQ(l.distinct_y, sy.size());
            EXPECT_EQ(l.total_accesses, x.trace().size() + y.trace().size());
            EXPECT_LE(l.distinct_x, l.total_accesses);
            EXPECT_LE(l.distinct_x, a.size());
            EXPECT_LE(l.distinct_y, b.size());
        }
    }

}  // namespace
}  // namespace gaped
