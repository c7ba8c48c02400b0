// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "gaped/alignment.hpp"
#include "gaped/oracle.hpp"
#include "test_support.hpp"

namespace gaped {
namespace {

    using testing::bytes;

    SuccinctAlignment sample() {
        SuccinctAlignment a;
        a.n = 10;
        a.t = 3;
        a.sink = -1;
        a.segments = {{0, 4, 0}, {4, 6, 1}, {7, 8, 0}, {9, 10, -1}};
        a.events = {{4, 0, EventKind::insertion}, {6, 1, EventKind::deletion}, {8, 0, EventKind::deletion}, {2, 0, EventKind::substitution}};
        return a;
    }

    TEST(Encoding, RoundTrip) {
        const auto a = sample();
        const auto bytes_out = encode(a);
        EXPECT_EQ(bytes_out.size(), (encoded_bits(a) + 7) / 8);
        EXPECT_EQ(decode(bytes_out), a);
    }

    TEST(Encoding, RoundTripOfInconsistentFlag) {
        auto a = sample();
        a.consistent = false;
        EXPECT_EQ(decode(encode(a)), a);
    }

    TEST(Encoding, TruncatedStreamThrows) {
        auto enc = encode(sample());
        enc.resize(enc.size() - 2);
        EXPECT_THROW((void)decode(enc), std::invalid_argument);
        EXPECT_THROW((void)decode(std::vector<std::uint8_t>(3, 0)), std::invalid_argument);
    }

    TEST(Encoding, SizeGrowsWithSegmentsNotRows) {
        SuccinctAlignment a;
        a.n = 1 << 20;
        a.t = 64;
        a.segments = {{0, a.n, 0}};
        EXPECT_LT(encoded_bits(a), 300U);
    }

    TEST(ValidateAlignment, PricesSegmentsAndTransitions) {
        const auto x = bytes("abcdef");
        const auto y = bytes("abXdef");
        SuccinctAlignment a;
        a.n = 6;
        a.t = 1;
        a.segments = {{0, 6, 0}};
        EXPECT_EQ(validate_alignment(a, x, y), 1);
        a.segments = {{0, 2, 0}, {3, 3, -1}, {3, 3, 0}, {3, 6, 0}};
        EXPECT_THROW((void)validate_alignment(a, x, y), std::invalid_argument);
        a.segments = {{0, 2, 0}, {3, 3, -1}, {3, 6, 0}};
        EXPECT_EQ(validate_alignment(a, x, y), 2);
    }

    TEST(ValidateAlignment, RejectsMalformedChains) {
        const auto x = bytes("abcd");
        const auto y = bytes("abcd");
        SuccinctAlignment a;
        a.n = 4;
        a.t = 2;
        EXPECT_THROW((void)validate_alignment(a, x, y), std::invalid_argument);
        a.segments = {{1, 4, 0}};
        EXPECT_THROW((void)validate_alignment(a, x, y), std::invalid_argument);
        a.segments = {{0, 3, 0}};
        EXPECT_THROW((void)validate_alignment(a, x, y), std::invalid_argument);
        a.segments = {{0, 2, 0}, {2, 4, 2}};
        EXPECT_THROW((void)validate_alignment(a, x, y), std::invalid_argument);
        a.segments = {{0, 4, 0}};
        a.n = 5;
        EXPECT_THROW((void)validate_alignment(a, x, y), std::invalid_argument);
    }

    TEST(ValidateAlignment, InsertionThenDiagonalRun) {
        const auto x = bytes("aaa");
        const auto y = bytes("aaaa");
        SuccinctAlignment a;
        a.n = 3;
        a.t = 2;
        a.sink = 1;
        a.segments = {{0, 0, 0}, {0, 3, 1}};
        EXPECT_EQ(validate_alignment(a, x, y), 1);
        a.segments = {{0, 0, 0}, {0, 0, 1}, {0, 2, 2}, {3, 3, 1}};
        EXPECT_EQ(validate_alignment(a, x, y), 3);
    }

    // An optimal edit script rewritten as segments prices at exactly the
    // edit distance and survives the bitstream.
    TEST(ToSuccinct, OptimalScriptsPriceAtTheDistance) {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 300; ++trial) {
            const int alphabet = 2 + static_cast<int>(rng() % 3);
            const auto x = testing::random_string(rng, rng() % 80, alphabet);
            const auto y = testing::mutate(rng, x, static_cast<int>(rng() % 12), alphabet);
            const auto s = to_succinct(optimal_alignment(x, y), x.size(), y.size());
            EXPECT_EQ(validate_alignment(s, x, y), testing::SuffixDistance(x, y)(0, 0)) << "trial " << trial;
            EXPECT_EQ(decode(encode(s)), s);
        }
    }

}  // namespace
}  // namespace gaped
