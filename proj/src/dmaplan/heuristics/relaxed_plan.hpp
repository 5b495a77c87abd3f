#pragma once

#include "dmaplan/model/state.hpp"

namespace dmaplan::heuristics {

using kernels::Bitset;

// Facts collected once, per agent, from a delete-relaxed plan built over the
// agent's own actions only (no cross-agent action sharing). Empty when the
// relaxation reaches no goal fact.
struct RelaxedPlanSet {
    std::vector<int> fact_ids;   // sorted ascending
    Bitset bits;                 // over all fact ids
    std::vector<int> dense_index; // fact id -> index into fact_ids, or -1

    int size() const { return static_cast<int>(fact_ids.size()); }
    bool empty() const { return fact_ids.empty(); }
};

// h_add-costed reachability layers from the agent's view of I, then greedy
// backward extraction over the agent's reachable goals; ties broken by
// lowest action index. R = union of add effects of the extracted actions.
RelaxedPlanSet extract_relaxed_plan(const model::Problem &problem, int agent);

// Per-node progress along a path: which R facts have been achieved so far
// and the path depth.
struct PathCounters {
    Bitset achieved; // over dense R indices
    int achieved_count = 0;
    int depth = 0;
};

PathCounters initial_counters(const RelaxedPlanSet &r, const model::State &state);

// achieved' = achieved ∪ (R ∩ true(child)); depth' = depth + 1.
PathCounters update_counters(const PathCounters &parent, const model::State &child,
                             const RelaxedPlanSet &r);

// Counters for a state received from another agent: achieved restarts from
// the received state's true facts, depth is taken from the message.
PathCounters counters_for_received(const RelaxedPlanSet &r, const model::State &state, int depth);

enum class GoalView { FULL, PUBLIC_ONLY };

// Number of unachieved goals in the view. Under FULL, a foreign agent's
// private goals count as one unachieved unit while its flag is false.
int goal_count(const model::Problem &problem, int agent, const model::State &state, GoalView view);

} // namespace dmaplan::heuristics
