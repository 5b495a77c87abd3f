#pragma once

#include "dmaplan/model/problem.hpp"
#include "dmaplan/util/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dmaplan::model {

// Opaque stand-in for another agent's private part. Equality is the only
// meaningful operation; value 0 denotes the initial private part.
struct Token {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    friend bool operator==(const Token &a, const Token &b) {
        return a.hi == b.hi && a.lo == b.lo;
    }
    bool is_initial() const { return hi == 0 && lo == 0; }
    std::string to_hex() const;
    static Token from_hex(const std::string &hex);
};

// One agent's view of a search state: plaintext truth values for its known
// facts, plus one opaque token per other agent.
struct State {
    Bitset local;                                // over all fact ids, known bits only
    std::vector<Token> foreign;                  // size n, own slot zero
    std::vector<std::uint8_t> private_goal_flags; // size n

    std::uint64_t hash() const {
        std::uint64_t h = local.hash();
        for (const Token &t : foreign) {
            h = util::hash_combine(h, t.hi);
            h = util::hash_combine(h, t.lo);
        }
        for (std::uint8_t f : private_goal_flags)
            h = util::hash_combine(h, f);
        return h;
    }

    friend bool operator==(const State &a, const State &b) {
        return a.local == b.local && a.foreign == b.foreign &&
               a.private_goal_flags == b.private_goal_flags;
    }
};

struct PublicProjection {
    Bitset facts; // over dense public indices

    // Canonical byte encoding; stable across runs and processes.
    std::string to_bytes() const { return facts.to_bytes(); }
};

// The owning agent's initial state. Foreign slots carry the initial token;
// every agent maps that token to its own private part of I.
State initial_state(const Problem &problem, int agent);

bool applicable(const Problem &problem, const Action &action, const State &state);

// STRIPS successor; requires applicable(). Recomputes the owner's
// private-goal flag, leaves foreign tokens untouched.
State apply(const Problem &problem, int agent, const Action &action, const State &state);

PublicProjection public_projection(const Problem &problem, const State &state);

// True iff all public goals hold and every agent's private-goal flag is set.
bool is_global_goal(const Problem &problem, int agent, const State &state);

} // namespace dmaplan::model
