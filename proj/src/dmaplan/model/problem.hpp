#pragma once

#include "dmaplan/kernels/bitset.hpp"

#include <string>
#include <vector>

namespace dmaplan::model {

using kernels::Bitset;

constexpr int kPublicOwner = -1;

struct Fact {
    int id = 0;
    std::string name;
    int owner = kPublicOwner; // kPublicOwner or owning agent index
    bool is_public() const { return owner == kPublicOwner; }
};

struct Action {
    std::string name;
    int agent = 0;
    std::vector<int> pre, add, del; // fact ids, sorted ascending
    double cost = 1.0;
    bool is_private = false; // true iff every mentioned fact is private to `agent`
};

// Grounded MA-STRIPS task, immutable after construction. Fact ids are dense
// and ordered lexicographically by name; action order follows the source
// document, so identical inputs ground identically.
class Problem {
public:
    std::string name;
    std::vector<std::string> agents;
    std::vector<Fact> facts;
    std::vector<Action> actions;
    std::vector<int> init;  // fact ids, sorted
    std::vector<int> goals; // fact ids, sorted
    std::vector<std::string> warnings; // classification warnings

    int num_agents() const { return static_cast<int>(agents.size()); }
    int num_facts() const { return static_cast<int>(facts.size()); }

    // Derived, filled by finalize():
    std::vector<std::vector<int>> actions_of;   // per agent, indices into actions
    Bitset public_mask;                         // over fact ids
    std::vector<Bitset> private_mask;           // per agent, over fact ids
    std::vector<Bitset> known_mask;             // per agent: public | own private
    std::vector<int> public_index;              // fact id -> dense public index, or -1
    std::vector<int> public_fact_ids;           // dense public index -> fact id
    Bitset init_bits;                           // over fact ids
    Bitset goal_bits;                           // over fact ids
    Bitset public_goal_bits;                    // goals that are public
    std::vector<Bitset> private_goal_bits;      // per agent: goals private to that agent
    std::vector<bool> has_private_goals;        // per agent
    std::vector<std::uint8_t> init_goal_flags;  // per agent: private goals satisfied in init

    int num_public_facts() const { return static_cast<int>(public_fact_ids.size()); }

    // Recomputes all derived fields from the core ones.
    void finalize();

    bool operator==(const Problem &other) const;
};

// Derives fact privacy from action usage: a fact is private to agent i iff
// every action mentioning it belongs to i and it was not forced public.
// Facts mentioned by no action are classified public with a warning.
// Also derives per-action visibility. Must be followed by finalize().
void classify_facts(Problem &problem, const std::vector<std::string> &forced_public);

// Exhaustive check of the privacy invariants; throws std::logic_error with a
// description on violation. Used by tests and the JSON loader.
void check_privacy_invariants(const Problem &problem);

struct PlanStep {
    int agent = 0;
    std::string action_name;
};

using Plan = std::vector<PlanStep>;

struct ValidationResult {
    bool valid = false;
    double cost = 0.0;
    int failed_index = -1; // first bad step, -1 when valid
    std::string reason;
};

// Checks a joint plan by forward simulation over the global, unencrypted
// state from I, verifying preconditions at every step and G at the end.
ValidationResult validate_plan(const Problem &problem, const Plan &plan);

} // namespace dmaplan::model
