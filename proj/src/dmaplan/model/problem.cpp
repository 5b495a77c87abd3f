#include "dmaplan/model/problem.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace dmaplan::model {

void classify_facts(Problem &problem, const std::vector<std::string> &forced_public) {
    const int nfacts = problem.num_facts();
    std::unordered_set<std::string> forced(forced_public.begin(), forced_public.end());

    // -2 = untouched, -1 = public, >=0 = sole mentioning agent so far
    std::vector<int> usage(nfacts, -2);
    auto mention = [&](int fact, int agent) {
        int &u = usage[fact];
        if (u == -2)
            u = agent;
        else if (u != agent)
            u = kPublicOwner;
    };
    for (const Action &a : problem.actions) {
        for (int f : a.pre)
            mention(f, a.agent);
        for (int f : a.add)
            mention(f, a.agent);
        for (int f : a.del)
            mention(f, a.agent);
    }

    Bitset in_init_or_goal(nfacts);
    for (int f : problem.init)
        in_init_or_goal.set(f);
    for (int f : problem.goals)
        in_init_or_goal.set(f);

    for (Fact &fact : problem.facts) {
        int u = usage[fact.id];
        if (u == -2) {
            fact.owner = kPublicOwner;
            if (!in_init_or_goal.test(fact.id))
                problem.warnings.push_back("fact '" + fact.name +
                                           "' is referenced by no action, init, or goal; classified public");
            continue;
        }
        if (u == kPublicOwner || forced.count(fact.name))
            fact.owner = kPublicOwner;
        else
            fact.owner = u;
    }

    for (Action &a : problem.actions) {
        bool all_private = true;
        auto scan = [&](const std::vector<int> &fs) {
            for (int f : fs)
                if (problem.facts[f].owner != a.agent)
                    all_private = false;
        };
        scan(a.pre);
        scan(a.add);
        scan(a.del);
        a.is_private = all_private;
    }
}

void Problem::finalize() {
    const int n = num_agents();
    const int nfacts = num_facts();

    actions_of.assign(n, {});
    for (std::size_t i = 0; i < actions.size(); ++i)
        actions_of[actions[i].agent].push_back(static_cast<int>(i));

    public_mask = Bitset(nfacts);
    private_mask.assign(n, Bitset(nfacts));
    public_index.assign(nfacts, -1);
    public_fact_ids.clear();
    for (const Fact &f : facts) {
        if (f.is_public()) {
            public_index[f.id] = static_cast<int>(public_fact_ids.size());
            public_fact_ids.push_back(f.id);
            public_mask.set(f.id);
        } else {
            private_mask[f.owner].set(f.id);
        }
    }

    known_mask.assign(n, Bitset(nfacts));
    for (int i = 0; i < n; ++i) {
        known_mask[i].or_assign(public_mask);
        known_mask[i].or_assign(private_mask[i]);
    }

    init_bits = Bitset(nfacts);
    for (int f : init)
        init_bits.set(f);
    goal_bits = Bitset(nfacts);
    for (int f : goals)
        goal_bits.set(f);

    public_goal_bits = Bitset(nfacts);
    private_goal_bits.assign(n, Bitset(nfacts));
    has_private_goals.assign(n, false);
    for (int f : goals) {
        if (facts[f].is_public()) {
            public_goal_bits.set(f);
        } else {
            private_goal_bits[facts[f].owner].set(f);
            has_private_goals[facts[f].owner] = true;
        }
    }

    init_goal_flags.assign(n, 1);
    for (int i = 0; i < n; ++i)
        init_goal_flags[i] = private_goal_bits[i].is_subset_of(init_bits) ? 1 : 0;
}

void check_privacy_invariants(const Problem &problem) {
    for (const Action &a : problem.actions) {
        auto scan = [&](const std::vector<int> &fs, const char *part) {
            for (int f : fs) {
                const Fact &fact = problem.facts[f];
                if (!fact.is_public() && fact.owner != a.agent)
                    throw std::logic_error("private fact '" + fact.name + "' of agent " +
                                           problem.agents[fact.owner] + " appears in " + part +
                                           " of action '" + a.name + "' of agent " +
                                           problem.agents[a.agent]);
            }
        };
        scan(a.pre, "pre");
        scan(a.add, "add");
        scan(a.del, "del");

        for (int f : a.add)
            if (std::binary_search(a.del.begin(), a.del.end(), f))
                throw std::logic_error("action '" + a.name + "' adds and deletes fact '" +
                                       problem.facts[f].name + "'");

        bool all_private = true;
        for (const auto *fs : {&a.pre, &a.add, &a.del})
            for (int f : *fs)
                if (problem.facts[f].owner != a.agent)
                    all_private = false;
        if (a.is_private != all_private)
            throw std::logic_error("action '" + a.name + "' has inconsistent visibility flag");
    }
}

bool Problem::operator==(const Problem &other) const {
    if (name != other.name || agents != other.agents || init != other.init || goals != other.goals)
        return false;
    if (facts.size() != other.facts.size() || actions.size() != other.actions.size())
        return false;
    for (std::size_t i = 0; i < facts.size(); ++i) {
        const Fact &a = facts[i], &b = other.facts[i];
        if (a.id != b.id || a.name != b.name || a.owner != b.owner)
            return false;
    }
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const Action &a = actions[i], &b = other.actions[i];
        if (a.name != b.name || a.agent != b.agent || a.pre != b.pre || a.add != b.add ||
            a.del != b.del || a.cost != b.cost || a.is_private != b.is_private)
            return false;
    }
    return true;
}

ValidationResult validate_plan(const Problem &problem, const Plan &plan) {
    std::unordered_map<std::string, int> by_name; // "agent/action" -> action index
    for (std::size_t i = 0; i < problem.actions.size(); ++i)
        by_name[std::to_string(problem.actions[i].agent) + "/" + problem.actions[i].name] =
            static_cast<int>(i);

    ValidationResult result;
    Bitset state = problem.init_bits;
    for (std::size_t step = 0; step < plan.size(); ++step) {
        const PlanStep &ps = plan[step];
        auto it = by_name.find(std::to_string(ps.agent) + "/" + ps.action_name);
        if (it == by_name.end()) {
            result.failed_index = static_cast<int>(step);
            result.reason = "unknown action '" + ps.action_name + "' for agent index " +
                            std::to_string(ps.agent);
            return result;
        }
        const Action &a = problem.actions[it->second];
        for (int f : a.pre) {
            if (!state.test(f)) {
                result.failed_index = static_cast<int>(step);
                result.reason = "precondition '" + problem.facts[f].name + "' of '" + a.name +
                                "' not satisfied";
                return result;
            }
        }
        for (int f : a.del)
            state.reset(f);
        for (int f : a.add)
            state.set(f);
        result.cost += a.cost;
    }
    if (!problem.goal_bits.is_subset_of(state)) {
        result.failed_index = static_cast<int>(plan.size());
        result.reason = "goal not satisfied in final state";
        return result;
    }
    result.valid = true;
    return result;
}

} // namespace dmaplan::model
