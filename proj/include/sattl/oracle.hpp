#pragma once

#include <cstdint>
#include <vector>

#include "sattl/env.hpp"

namespace sattl::agents {

struct Plan {
  std::vector<int> actions;
  std::int64_t return_units = 0;  // in twentieths (0.05)
  double expected_return = 0.0;
  bool reaches_goal = false;
};

/// Optimal plan for one atomic task from the map's current state and step
/// counter. Costs are the negated rewards (ordinary step 0.05, violation 1),
/// reaching the goal adds +1. Dijkstra over position (x heading in MiniGrid)
/// gives the answer whenever its cheapest path fits in the remaining horizon
/// and beats idling out the horizon; otherwise a time-indexed backward
/// induction over the remaining steps is used. Throws Unreachable when no
/// goal-satisfying state can be entered.
Plan plan_oracle(const grid::GridMap& map, const AtomicTask& task, const grid::ObjectCatalog& catalog);

// The time-indexed solver on its own (exact for any horizon).
Plan plan_by_induction(const grid::GridMap& map, const AtomicTask& task, const grid::ObjectCatalog& catalog);

}  // namespace sattl::agents
