// Copyright 2026 The gaped Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gaped/alignment.hpp"
#include "gaped/queried_string.hpp"

namespace gaped {

enum class Answer : std::uint8_t { close, far };

[[nodiscard]] constexpr std::string_view to_string(Answer a) noexcept {
    return a == Answer::close ? "close" : "far";
}

/// One cost increment: diagonal d charged in the round at `row`.
struct ChargedEvent {
    std::int64_t row = 0;
    int d = 0;

    friend bool operator==(const ChargedEvent&, const ChargedEvent&) = default;
};

struct RunStats {
    std::int64_t contiguous_rows = 0;
    std::int64_t sampled_rows = 0;
    std::int64_t binary_searches = 0;
    std::int64_t probes = 0;
    /// Failed periodicity checks that left more than one diagonal uncharged.
    std::int64_t multi_uncharged = 0;
    std::int64_t lce_jumps = 0;
    std::int64_t lce_rows_skipped = 0;
    /// t exceeded sqrt(n).
    bool t_above_sqrt_n = false;
    /// The certificate needed a step the cost bookkeeping did not explain.
    bool alignment_bridged = false;
};

struct Verdict {
    Answer answer = Answer::close;
    /// Cost estimate at the sink diagonal when the run stopped.
    int final_a0 = 0;
    QueryLedger ledger;
    std::int64_t mode_transitions = 0;
    std::optional<SuccinctAlignment> alignment;
    std::vector<ChargedEvent> events;
    RunStats stats;
};

}  // namespace gaped
