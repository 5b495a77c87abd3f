#include "dmaplan/heuristics/relaxed_plan.hpp"

#include <algorithm>
#include <limits>

namespace dmaplan::heuristics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

RelaxedPlanSet extract_relaxed_plan(const model::Problem &problem, int agent) {
    const int nfacts = problem.num_facts();
    RelaxedPlanSet result;
    result.bits = Bitset(static_cast<std::size_t>(nfacts));
    result.dense_index.assign(static_cast<std::size_t>(nfacts), -1);

    // h_add fact costs under delete relaxation, agent's own actions only.
    model::State init = model::initial_state(problem, agent);
    std::vector<double> fact_cost(static_cast<std::size_t>(nfacts), kInf);
    for (int f = 0; f < nfacts; ++f)
        if (init.local.test(static_cast<std::size_t>(f)))
            fact_cost[static_cast<std::size_t>(f)] = 0.0;

    const std::vector<int> &own = problem.actions_of[agent];
    auto action_cost = [&](const model::Action &a) {
        double c = a.cost;
        for (int f : a.pre) {
            if (fact_cost[static_cast<std::size_t>(f)] == kInf)
                return kInf;
            c += fact_cost[static_cast<std::size_t>(f)];
        }
        return c;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int ai : own) {
            const model::Action &a = problem.actions[static_cast<std::size_t>(ai)];
            double c = action_cost(a);
            if (c == kInf)
                continue;
            for (int f : a.add) {
                if (c < fact_cost[static_cast<std::size_t>(f)]) {
                    fact_cost[static_cast<std::size_t>(f)] = c;
                    changed = true;
                }
            }
        }
    }

    // Achiever per fact at the converged costs; ties go to the lowest index.
    std::vector<int> best_achiever(static_cast<std::size_t>(nfacts), -1);
    for (int ai : own) {
        const model::Action &a = problem.actions[static_cast<std::size_t>(ai)];
        double c = action_cost(a);
        if (c == kInf)
            continue;
        for (int f : a.add)
            if (best_achiever[static_cast<std::size_t>(f)] < 0 &&
                c == fact_cost[static_cast<std::size_t>(f)])
                best_achiever[static_cast<std::size_t>(f)] = ai;
    }

    // Greedy backward extraction from the agent's reachable known goals.
    std::vector<int> open_goals;
    for (int g : problem.goals) {
        if (!problem.known_mask[agent].test(static_cast<std::size_t>(g)))
            continue;
        if (init.local.test(static_cast<std::size_t>(g)))
            continue;
        if (fact_cost[static_cast<std::size_t>(g)] == kInf)
            continue;
        open_goals.push_back(g);
    }

    Bitset closed_facts(static_cast<std::size_t>(nfacts));
    Bitset chosen_actions_mark(problem.actions.size());
    std::vector<int> queue = open_goals;
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        if (closed_facts.test(static_cast<std::size_t>(f)))
            continue;
        closed_facts.set(static_cast<std::size_t>(f));
        if (init.local.test(static_cast<std::size_t>(f)))
            continue;
        int ai = best_achiever[static_cast<std::size_t>(f)];
        if (ai < 0)
            continue;
        if (!chosen_actions_mark.test(static_cast<std::size_t>(ai))) {
            chosen_actions_mark.set(static_cast<std::size_t>(ai));
            const model::Action &a = problem.actions[static_cast<std::size_t>(ai)];
            for (int add : a.add)
                if (!result.bits.test(static_cast<std::size_t>(add))) {
                    result.bits.set(static_cast<std::size_t>(add));
                    result.fact_ids.push_back(add);
                }
            for (int pre : a.pre)
                queue.push_back(pre);
        }
    }

    std::sort(result.fact_ids.begin(), result.fact_ids.end());
    for (std::size_t i = 0; i < result.fact_ids.size(); ++i)
        result.dense_index[static_cast<std::size_t>(result.fact_ids[i])] = static_cast<int>(i);
    return result;
}

namespace {

void fold_in_true_facts(PathCounters &c, const model::State &state, const RelaxedPlanSet &r) {
    for (std::size_t i = 0; i < r.fact_ids.size(); ++i) {
        if (!c.achieved.test(i) && state.local.test(static_cast<std::size_t>(r.fact_ids[i]))) {
            c.achieved.set(i);
            ++c.achieved_count;
        }
    }
}

} // namespace

PathCounters initial_counters(const RelaxedPlanSet &r, const model::State &state) {
    PathCounters c;
    c.achieved = Bitset(r.fact_ids.size());
    c.depth = 0;
    fold_in_true_facts(c, state, r);
    return c;
}

PathCounters update_counters(const PathCounters &parent, const model::State &child,
                             const RelaxedPlanSet &r) {
    PathCounters c = parent;
    c.depth = parent.depth + 1;
    fold_in_true_facts(c, child, r);
    return c;
}

PathCounters counters_for_received(const RelaxedPlanSet &r, const model::State &state, int depth) {
    PathCounters c = initial_counters(r, state);
    c.depth = depth;
    return c;
}

int goal_count(const model::Problem &problem, int agent, const model::State &state, GoalView view) {
    int unachieved = static_cast<int>(problem.public_goal_bits.count_and_not(state.local));
    if (view == GoalView::PUBLIC_ONLY)
        return unachieved;
    unachieved += static_cast<int>(problem.private_goal_bits[agent].count_and_not(state.local));
    for (int j = 0; j < problem.num_agents(); ++j) {
        if (j == agent || !problem.has_private_goals[j])
            continue;
        if (!state.private_goal_flags[static_cast<std::size_t>(j)])
            ++unachieved;
    }
    return unachieved;
}

} // namespace dmaplan::heuristics
