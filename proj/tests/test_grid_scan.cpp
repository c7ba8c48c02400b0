// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "gaped/grid_scan.hpp"
#include "gaped/oracle.hpp"
#include "test_support.hpp"

namespace gaped {
namespace {

    using testing::bytes;

    TEST(IsDominated, NeighbourOneCheaperDominates) {
        EXPECT_EQ(is_dominated(3, 2, std::nullopt), Domination::by_left);
        EXPECT_EQ(is_dominated(3, std::nullopt, 2), Domination::by_upper_right);
        EXPECT_EQ(is_dominated(3, 2, 2), Domination::both);
        EXPECT_EQ(is_dominated(3, 3, 4), Domination::none);
        EXPECT_EQ(is_dominated(3, std::nullopt, std::nullopt), Domination::none);
    }

    TEST(IsPotent, UndominatedIsPotent) {
        EXPECT_TRUE(is_potent(Domination::none, {}, {}));
    }

    TEST(IsPotent, DominatorMustBePotentAndMismatch) {
        EXPECT_TRUE(is_potent(Domination::by_left, {true, true}, {}));
        EXPECT_FALSE(is_potent(Domination::by_left, {true, false}, {}));
        EXPECT_FALSE(is_potent(Domination::by_left, {false, true}, {}));
        EXPECT_TRUE(is_potent(Domination::by_upper_right, {}, {true, true}));
        EXPECT_FALSE(is_potent(Domination::both, {true, true}, {true, false}));
        EXPECT_TRUE(is_potent(Domination::both, {true, true}, {true, true}));
    }

    TEST(CostArray, StartsAtAbsoluteDiagonal) {
        const CostArray a(3);
        for (int d = -3; d <= 3; ++d) {
            EXPECT_EQ(a[d], std::abs(d));
        }
        EXPECT_FALSE(a.in_band(4));
        EXPECT_THROW(CostArray(-1), std::invalid_argument);
    }

    TEST(CostArray, RoundStampsExpire) {
        CostArray a(2);
        a.increment(1, 5);
        a.mark_potent(1, 5);
        EXPECT_EQ(a[1], 2);
        EXPECT_TRUE(a.incremented_at(1, 5));
        EXPECT_EQ(a.cost_at(1, 5), 1);
        EXPECT_EQ(a.cost_at(1, 6), 2);
        EXPECT_TRUE(a.potent_at(1, 5));
        EXPECT_FALSE(a.potent_at(1, 6));
    }

    TEST(DiagonalSet, FromSortsAndDeduplicates) {
        const auto s = DiagonalSet::from({3, -1, 3, 0});
        EXPECT_EQ(s.values(), (std::vector<int>{-1, 0, 3}));
        EXPECT_EQ(s.min(), -1);
        EXPECT_EQ(s.max(), 3);
        EXPECT_TRUE(s.contains(0));
        EXPECT_FALSE(s.contains(1));
    }

    TEST(DiagonalSet, InsertAheadOnly) {
        auto s = DiagonalSet::from({0, 4});
        s.insert_ahead(0, 1);
        EXPECT_EQ(s.values(), (std::vector<int>{0, 1, 4}));
        s.insert_ahead(1, 4);
        EXPECT_EQ(s.size(), 3U);
        EXPECT_THROW(s.insert_ahead(1, 0), std::logic_error);
        EXPECT_THROW(s.insert_ahead(1, 1), std::logic_error);
    }

    ScanResult scan(const Bytes& a, const Bytes& b, int t) {
        QueriedString x(a, StringLabel::x);
        QueriedString y(b, StringLabel::y);
        return selective_scan(x, y, t);
    }

    TEST(SelectiveScan, SingleSubstitution) {
        const auto r = scan(bytes("aaaa"), bytes("aaab"), 2);
        ASSERT_TRUE(r.cost.has_value());
        EXPECT_EQ(*r.cost, 1);
    }

    TEST(SelectiveScan, IdenticalStringsAreZero) {
        const auto r = scan(bytes("abcdabcd"), bytes("abcdabcd"), 1);
        ASSERT_TRUE(r.cost.has_value());
        EXPECT_EQ(*r.cost, 0);
    }

    TEST(SelectiveScan, LengthGapBeyondBudgetIsFar) {
        EXPECT_FALSE(scan(bytes("abc"), bytes("abcdef"), 2).cost.has_value());
        const auto r = scan(bytes("abc"), bytes("abcdef"), 3);
        ASSERT_TRUE(r.cost.has_value());
        EXPECT_EQ(*r.cost, 3);
    }

    TEST(SelectiveScan, EmptyInputs) {
        const auto r = scan({}, {}, 0);
        ASSERT_TRUE(r.cost.has_value());
        EXPECT_EQ(*r.cost, 0);
        const auto ins = scan({}, bytes("ab"), 2);
        ASSERT_TRUE(ins.cost.has_value());
        EXPECT_EQ(*ins.cost, 2);
    }

    TEST(SelectiveScan, AgreesWithOracleWhenWithinBudget) {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 400; ++trial) {
            const int alphabet = 2 + static_cast<int>(rng() % 3);
            const auto a = testing::random_string(rng, rng() % 120, alphabet);
            const auto b = testing::mutate(rng, a, static_cast<int>(rng() % 10), alphabet);
            const int t = static_cast<int>(rng() % 12);
            const int exact = testing::SuffixDistance(a, b)(0, 0);
            const auto r = scan(a, b, t);
            if (exact <= t) {
                ASSERT_TRUE(r.cost.has_value()) << "trial " << trial;
                EXPECT_EQ(*r.cost, exact) << "trial " << trial;
            } else {
                EXPECT_FALSE(r.cost.has_value()) << "trial " << trial;
            }
        }
    }

    // The unpruned scan with a band wide enough to hold every vertex reports,
    // at each row, exactly the potent vertices of the definition, and
    // afterwards holds the exact costs of the next row.
    struct RecordingObserver {
        std::vector<std::vector<int>> potent;
        std::vector<std::vector<int>> after;
        int band = 0;
        void on_vertex(std::int64_t, int, const CostArray&) {}
        void on_row_end(std::int64_t, const std::vector<int>& p, const CostArray& a) {
            potent.push_back(p);
            std::vector<int> snap;
            for (int d = -band; d <= band; ++d) {
                snap.push_back(a[d]);
            }
            after.push_back(std::move(snap));
        }
    };

    TEST(SelectiveScan, PotentSetsMatchDefinition) {
        std::mt19937_64 rng(22);
        for (int trial = 0; trial < 80; ++trial) {
            const int alphabet = 2 + static_cast<int>(rng() % 3);
            const auto a = testing::random_string(rng, 5 + rng() % 40, alphabet);
            const auto b = testing::mutate(rng, a, static_cast<int>(rng() % 8), alphabet);
            const int band = static_cast<int>(a.size() + b.size());
            QueriedString x(a, StringLabel::x);
            QueriedString y(b, StringLabel::y);
            RecordingObserver obs;
            obs.band = band;
            (void)selective_scan(x, y, ScanOptions{band, band, false}, obs);
            const BruteForcePotency ref(a, b, band);
            for (std::size_t i = 0; i < obs.potent.size(); ++i) {
                const auto row = static_cast<std::int64_t>(i);
                std::vector<int> got;
                for (int d : obs.potent[i]) {
                    if (ref.valid(row, d)) {
                        got.push_back(d);
                    }
                }
                EXPECT_EQ(got, ref.potent_set(row)) << "trial " << trial << " row " << i;
            }
        }
    }

    TEST(SelectiveScan, CostsAfterEachRowAreExact) {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 80; ++trial) {
            const int alphabet = 2 + static_cast<int>(rng() % 3);
            const auto a = testing::random_string(rng, 5 + rng() % 40, alphabet);
            const auto b = testing::mutate(rng, a, static_cast<int>(rng() % 8), alphabet);
            const int band = static_cast<int>(a.size() + b.size());
            QueriedString x(a, StringLabel::x);
            QueriedString y(b, StringLabel::y);
            RecordingObserver obs;
            obs.band = band;
            (void)selective_scan(x, y, ScanOptions{band, band, false}, obs);
            for (std::size_t i = 0; i < obs.after.size(); ++i) {
                const auto next = i + 1;
                for (int d = -band; d <= band; ++d) {
                    const auto j = static_cast<std::int64_t>(next) + d;
                    if (j < 0 || j > static_cast<std::int64_t>(b.size())) {
                        continue;
                    }
                    EXPECT_EQ(obs.after[i][static_cast<std::size_t>(d + band)],
                              testing::prefix_distance(a, b, next, static_cast<std::size_t>(j)))
                        << "trial " << trial << " row " << i << " d " << d;
                }
            }
        }
    }

    // Mid-row: once diagonal d has been scanned in row i, its entry already
    // holds the cost of (i+1, d).
    TEST(SelectiveScan, ScannedDiagonalHoldsNextRowCost) {
        struct Probe {
            const Bytes* a;
            const Bytes* b;
            int failures = 0;
            void on_vertex(std::int64_t row, int d, const CostArray& arr) {
                const auto j = row + 1 + d;
                if (j < 0 || j > static_cast<std::int64_t>(b->size())) {
                    return;
                }
                if (arr[d] != testing::prefix_distance(*a, *b, static_cast<std::size_t>(row + 1), static_cast<std::size_t>(j))) {
                    ++failures;
                }
            }
            void on_row_end(std::int64_t, const std::vector<int>&, const CostArray&) {}
        };
        std::mt19937_64 rng(24);
        for (int trial = 0; trial < 60; ++trial) {
            const auto a = testing::random_string(rng, 5 + rng() % 30, 3);
            const auto b = testing::mutate(rng, a, static_cast<int>(rng() % 6), 3);
            const int band = static_cast<int>(a.size() + b.size());
            QueriedString x(a, StringLabel::x);
            QueriedString y(b, StringLabel::y);
            Probe p{&a, &b};
            (void)selective_scan(x, y, ScanOptions{band, band, false}, p);
            EXPECT_EQ(p.failures, 0) << "trial " << trial;
        }
    }

    TEST(SelectiveScan, ReadsRowsInOrder) {
        std::mt19937_64 rng(25);
        const auto a = testing::random_string(rng, 400, 4);
        const auto b = testing::mutate(rng, a, 10, 4);
        QueriedString x(a, StringLabel::x);
        QueriedString y(b, StringLabel::y);
        x.enable_trace();
        (void)selective_scan(x, y, 12);
        EXPECT_TRUE(std::is_sorted(x.trace().begin(), x.trace().end()));
    }

    TEST(SelectiveScan, DistinctReadsBoundedByBand) {
        std::mt19937_64 rng(26);
        const auto a = testing::random_string(rng, 2000, 4);
        const auto b = testing::mutate(rng, a, 5, 4);
        QueriedString x(a, StringLabel::x);
        QueriedString y(b, StringLabel::y);
        const int t = 10;
        const auto r = selective_scan(x, y, t);
        ASSERT_TRUE(r.cost.has_value());
        EXPECT_LE(ledger_snapshot(x, y).total_accesses, 2U * (2U * t + 1U) * a.size());
    }

}  // namespace
}  // namespace gaped
