#include "dmaplan/model/state.hpp"

#include <stdexcept>

namespace dmaplan::model {

namespace {

char hex_digit(unsigned v) {
    return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
}

unsigned hex_value(char c) {
    if (c >= '0' && c <= '9')
        return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f')
        return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F')
        return static_cast<unsigned>(c - 'A' + 10);
    throw std::invalid_argument("invalid hex digit in token");
}

} // namespace

std::string Token::to_hex() const {
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) {
        std::uint64_t w = i < 8 ? hi : lo;
        unsigned byte = static_cast<unsigned>((w >> ((7 - (i % 8)) * 8)) & 0xff);
        out[2 * static_cast<std::size_t>(i)] = hex_digit(byte >> 4);
        out[2 * static_cast<std::size_t>(i) + 1] = hex_digit(byte & 0xf);
    }
    return out;
}

Token Token::from_hex(const std::string &hex) {
    if (hex.size() != 32)
        throw std::invalid_argument("token hex must be 32 characters");
    Token t;
    for (int i = 0; i < 16; ++i) {
        unsigned byte = (hex_value(hex[2 * static_cast<std::size_t>(i)]) << 4) |
                        hex_value(hex[2 * static_cast<std::size_t>(i) + 1]);
        std::uint64_t &w = i < 8 ? t.hi : t.lo;
        w |= std::uint64_t(byte) << ((7 - (i % 8)) * 8);
    }
    return t;
}

State initial_state(const Problem &problem, int agent) {
    State s;
    // local = I restricted to the agent's known facts
    s.local = problem.init_bits;
    Bitset unknown = problem.init_bits;
    unknown.andnot_assign(problem.known_mask[agent]);
    s.local.andnot_assign(unknown);

    s.foreign.assign(static_cast<std::size_t>(problem.num_agents()), Token{});
    s.private_goal_flags.assign(problem.init_goal_flags.begin(), problem.init_goal_flags.end());
    return s;
}

bool applicable(const Problem &problem, const Action &action, const State &state) {
    (void)problem;
    for (int f : action.pre)
        if (!state.local.test(static_cast<std::size_t>(f)))
            return false;
    return true;
}

State apply(const Problem &problem, int agent, const Action &action, const State &state) {
    if (action.agent != agent)
        throw std::logic_error("apply: action '" + action.name + "' does not belong to agent " +
                               std::to_string(agent));
    if (!applicable(problem, action, state))
        throw std::logic_error("apply: action '" + action.name + "' is not applicable");

    State next = state;
    for (int f : action.del)
        next.local.reset(static_cast<std::size_t>(f));
    for (int f : action.add)
        next.local.set(static_cast<std::size_t>(f));
    next.private_goal_flags[static_cast<std::size_t>(agent)] =
        problem.private_goal_bits[agent].is_subset_of(next.local) ? 1 : 0;
    return next;
}

PublicProjection public_projection(const Problem &problem, const State &state) {
    PublicProjection p;
    p.facts = Bitset(static_cast<std::size_t>(problem.num_public_facts()));
    for (int i = 0; i < problem.num_public_facts(); ++i)
        if (state.local.test(static_cast<std::size_t>(problem.public_fact_ids[i])))
            p.facts.set(static_cast<std::size_t>(i));
    return p;
}

bool is_global_goal(const Problem &problem, int agent, const State &state) {
    if (!problem.public_goal_bits.is_subset_of(state.local))
        return false;
    if (!problem.private_goal_bits[agent].is_subset_of(state.local))
        return false;
    for (int j = 0; j < problem.num_agents(); ++j) {
        if (j == agent || !problem.has_private_goals[j])
            continue;
        if (!state.private_goal_flags[static_cast<std::size_t>(j)])
            return false;
    }
    return true;
}

} // namespace dmaplan::model
