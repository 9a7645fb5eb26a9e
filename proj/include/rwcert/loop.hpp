#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rwcert/budget.hpp"
#include "rwcert/rewriting.hpp"

namespace rwcert {

// StringFactor: steps are string rewrite steps and the final word contains
// the seed as a factor (s ->+ u s v). Sound for both modes, since every
// string step is a cycle step. CycleRevisit: steps are cycle rewrite steps
// on canonical representatives and the final cycle equals the seed; sound
// for cycle mode only.
enum class LoopShape { StringFactor, CycleRevisit };

struct LoopStep {
    std::size_t rule = 0;
    std::size_t position = 0; // factor position (StringFactor) / rotation (CycleRevisit)
    Word result;

    bool operator==(const LoopStep&) const = default;
};

struct LoopCert {
    LoopShape shape = LoopShape::StringFactor;
    Word seed; // canonical representative when CycleRevisit
    std::vector<LoopStep> steps; // nonempty

    bool operator==(const LoopCert&) const = default;
};

struct LoopParams {
    std::size_t max_depth = 25;
    std::size_t max_length = 40;
    std::size_t max_nodes = 20000;
};

// Bounded breadth-first search for a loop, seeded from each lhs in rule
// order. String mode searches string steps for factor containment of the
// seed. Cycle mode first searches string steps the same way (embedded
// loops), then cycle steps for an exact revisit of the seed cycle.
// Exploration order is deterministic: rule index, then position.
std::optional<LoopCert> find_loop(const RewriteSystem& system, const LoopParams& params,
                                  const Budget& budget);

struct LoopCheckResult {
    bool valid = false;
    std::string reason;

    static LoopCheckResult ok() { return {true, ""}; }
    static LoopCheckResult fail(std::string why) { return {false, std::move(why)}; }
};

// Replays every step via string_successors/cycle_successors and verifies the
// closing containment/equality condition.
LoopCheckResult check_loop(const RewriteSystem& system, const LoopCert& cert);

} // namespace rwcert
