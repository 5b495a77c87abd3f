#pragma once

#include "dmaplan/filter/policy.hpp"
#include "dmaplan/model/problem.hpp"
#include "dmaplan/net/delay.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dmaplan::engine {

enum class Outcome { SOLVED, EXHAUSTED, TIMEOUT, ERROR };

const char *to_string(Outcome outcome);

enum class RunMode { SIM, THREADS };

struct SearchConfig {
    filter::FilterPolicy policy;
    bool strong_privacy = false; // public-projection novelty + depth ties
    int search_novelty_cap = 2;
    double time_limit_s = 300.0; // virtual seconds in SIM, wall in THREADS
};

struct RunConfig {
    SearchConfig search;
    RunMode mode = RunMode::SIM;
    net::DelayModel delay;
    std::uint64_t seed = 1;
    bool keep_message_log = false; // SIM only; enables audits in tests
};

struct AgentStats {
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t reopened = 0;
    std::uint64_t state_messages_sent = 0;     // per-recipient
    std::uint64_t state_messages_received = 0;
    std::uint64_t malformed_dropped = 0;
    std::uint64_t withheld_peak = 0;
    std::uint64_t withheld_final = 0; // entries still queued when the run ended
    std::uint64_t suppressed = 0;
    std::uint64_t released = 0;
    // One entry per STATE send event (not per recipient): the canonical
    // public-projection bytes, in transmission order.
    std::vector<std::string> sent_projections;
};

struct RunResult {
    Outcome outcome = Outcome::ERROR;
    model::Plan plan;
    double cost = 0.0;
    std::uint64_t elapsed_us = 0; // virtual in SIM, wall in THREADS
    std::vector<AgentStats> agents;
    std::string error;

    std::uint64_t total(std::uint64_t AgentStats::*field) const {
        std::uint64_t sum = 0;
        for (const AgentStats &a : agents)
            sum += a.*field;
        return sum;
    }
    std::uint64_t max_withheld_peak() const {
        std::uint64_t peak = 0;
        for (const AgentStats &a : agents)
            peak = std::max(peak, a.withheld_peak);
        return peak;
    }
};

} // namespace dmaplan::engine
