#pragma once

#include "dmaplan/engine/search_types.hpp"
#include "dmaplan/net/envelope.hpp"

namespace dmaplan::engine {

// Runs the full multi-agent search over `problem` under `config`. In SIM
// mode a single scheduler interleaves the agents deterministically under
// virtual time; in THREADS mode each agent runs on its own thread over the
// loopback socket transport.
RunResult solve(const model::Problem &problem, const RunConfig &config);

// SIM run that also returns the complete envelope log for audits.
struct SimArtifacts {
    RunResult result;
    std::vector<net::Envelope> message_log;
};
SimArtifacts solve_sim_logged(const model::Problem &problem, const RunConfig &config);

} // namespace dmaplan::engine
