#pragma once

#include "dmaplan/model/state.hpp"

#include <cstdint>
#include <string>

namespace dmaplan::net {

// Per-agent secret for one run.
struct AgentKey {
    std::uint64_t k0 = 0;
    std::uint64_t k1 = 0;
};

AgentKey derive_agent_key(std::uint64_t run_seed, int agent);

// Keyed 128-bit one-way digest (SipHash-2-4 with 128-bit output). Receivers
// only ever compare tokens for equality; there is no decryption path.
model::Token keyed_digest(const AgentKey &key, const std::string &bytes);

// Token for the agent's current private part: digest of the canonical byte
// encoding of its true private facts. Equal private parts yield equal
// tokens within a run.
model::Token encrypt_private_part(const model::Problem &problem, int agent,
                                  const model::State &state, const AgentKey &key);

// Canonical byte encoding of the agent's private facts in a state (dense
// private-fact order).
std::string private_part_bytes(const model::Problem &problem, int agent,
                               const model::State &state);

} // namespace dmaplan::net
