#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace oracle {

using dmaplan::model::Action;
using dmaplan::model::Plan;
using dmaplan::model::Problem;

namespace {

using FactSet = std::vector<int>; // sorted fact ids

FactSet apply_set(const FactSet &state, const Action &action) {
    std::set<int> s(state.begin(), state.end());
    for (int f : action.del)
        s.erase(f);
    for (int f : action.add)
        s.insert(f);
    return FactSet(s.begin(), s.end());
}

bool subset_of(const std::vector<int> &needles, const FactSet &state) {
    for (int f : needles)
        if (!std::binary_search(state.begin(), state.end(), f))
            return false;
    return true;
}

std::string projection_bytes(const Problem &problem, const FactSet &state) {
    std::string bytes((static_cast<std::size_t>(problem.num_public_facts()) + 7) / 8, '\0');
    for (int f : state) {
        int idx = problem.public_index[static_cast<std::size_t>(f)];
        if (idx >= 0)
            bytes[static_cast<std::size_t>(idx) / 8] |=
                static_cast<char>(1 << (static_cast<std::size_t>(idx) % 8));
    }
    return bytes;
}

} // namespace

SearchResult search(const Problem &problem, std::vector<int> agents) {
    if (agents.empty())
        for (int i = 0; i < problem.num_agents(); ++i)
            agents.push_back(i);

    std::vector<int> usable_actions;
    for (std::size_t i = 0; i < problem.actions.size(); ++i)
        if (std::find(agents.begin(), agents.end(), problem.actions[i].agent) != agents.end())
            usable_actions.push_back(static_cast<int>(i));

    FactSet init(problem.init.begin(), problem.init.end());

    SearchResult result;
    std::map<FactSet, std::pair<int, int>> parent; // state -> (parent state idx, action)
    std::vector<FactSet> order;
    std::deque<int> queue;

    parent[init] = {-1, -1};
    order.push_back(init);
    queue.push_back(0);
    result.reachable_public_projections.insert(projection_bytes(problem, init));

    int goal_idx = -1;
    if (subset_of(problem.goals, init))
        goal_idx = 0;

    while (!queue.empty() && goal_idx < 0) {
        int cur = queue.front();
        queue.pop_front();
        const FactSet state = order[static_cast<std::size_t>(cur)];
        for (int ai : usable_actions) {
            const Action &a = problem.actions[static_cast<std::size_t>(ai)];
            if (!subset_of(a.pre, state))
                continue;
            FactSet next = apply_set(state, a);
            if (parent.count(next))
                continue;
            parent[next] = {cur, ai};
            order.push_back(next);
            result.reachable_public_projections.insert(projection_bytes(problem, next));
            int idx = static_cast<int>(order.size()) - 1;
            if (subset_of(problem.goals, next)) {
                goal_idx = idx;
                break;
            }
            queue.push_back(idx);
        }
    }

    // Exhaust reachability even after the goal for projection/state counts.
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        const FactSet state = order[static_cast<std::size_t>(cur)];
        for (int ai : usable_actions) {
            const Action &a = problem.actions[static_cast<std::size_t>(ai)];
            if (!subset_of(a.pre, state))
                continue;
            FactSet next = apply_set(state, a);
            if (parent.count(next))
                continue;
            parent[next] = {cur, ai};
            order.push_back(next);
            result.reachable_public_projections.insert(projection_bytes(problem, next));
            queue.push_back(static_cast<int>(order.size()) - 1);
        }
    }

    result.reachable_states = order.size();
    if (goal_idx < 0)
        return result;

    result.solvable = true;
    int cur = goal_idx;
    std::vector<int> actions_reversed;
    while (cur >= 0) {
        auto [p, ai] = parent[order[static_cast<std::size_t>(cur)]];
        if (ai >= 0)
            actions_reversed.push_back(ai);
        cur = p;
    }
    std::reverse(actions_reversed.begin(), actions_reversed.end());
    for (int ai : actions_reversed) {
        const Action &a = problem.actions[static_cast<std::size_t>(ai)];
        result.plan.push_back({a.agent, a.name});
        result.cost += a.cost;
    }
    return result;
}

bool simulate_plan(const Problem &problem, const Plan &plan, double *cost_out) {
    FactSet state(problem.init.begin(), problem.init.end());
    double cost = 0.0;
    for (const dmaplan::model::PlanStep &step : plan) {
        int found = -1;
        for (std::size_t i = 0; i < problem.actions.size(); ++i)
            if (problem.actions[i].agent == step.agent && problem.actions[i].name == step.action_name)
                found = static_cast<int>(i);
        if (found < 0)
            return false;
        const Action &a = problem.actions[static_cast<std::size_t>(found)];
        if (!subset_of(a.pre, state))
            return false;
        state = apply_set(state, a);
        cost += a.cost;
    }
    if (cost_out)
        *cost_out = cost;
    return subset_of(problem.goals, state);
}

int BruteNovelty::probe(const std::vector<std::uint32_t> &atoms, std::uint64_t key) const {
    auto it = partitions_.find(key);
    const std::vector<std::set<std::uint32_t>> *history =
        it == partitions_.end() ? nullptr : &it->second;

    if (!atoms.empty()) {
        for (std::uint32_t a : atoms) {
            bool seen = false;
            if (history)
                for (const auto &past : *history)
                    if (past.count(a)) {
                        seen = true;
                        break;
                    }
            if (!seen)
                return 1;
        }
        if (cap_ >= 2) {
            for (std::size_t i = 0; i < atoms.size(); ++i)
                for (std::size_t j = i + 1; j < atoms.size(); ++j) {
                    bool seen = false;
                    if (history)
                        for (const auto &past : *history)
                            if (past.count(atoms[i]) && past.count(atoms[j])) {
                                seen = true;
                                break;
                            }
                    if (!seen)
                        return 2;
                }
        }
    }
    return sentinel_;
}

void BruteNovelty::commit(const std::vector<std::uint32_t> &atoms, std::uint64_t key) {
    partitions_[key].push_back(std::set<std::uint32_t>(atoms.begin(), atoms.end()));
}

// Series expansion for x < shape+1, Lentz continued fraction otherwise.
double gamma_cdf(double shape, double scale, double x) {
    if (x <= 0.0)
        return 0.0;
    const double z = x / scale;
    const double lg = std::lgamma(shape);
    if (z < shape + 1.0) {
        double sum = 1.0 / shape;
        double term = sum;
        for (int n = 1; n < 500; ++n) {
            term *= z / (shape + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-15)
                break;
        }
        return sum * std::exp(-z + shape * std::log(z) - lg);
    }
    // continued fraction for Q(shape, z)
    const double tiny = 1e-300;
    double b = z + 1.0 - shape;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - shape);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15)
            break;
    }
    double q = std::exp(-z + shape * std::log(z) - lg) * h;
    return 1.0 - q;
}

} // namespace oracle
