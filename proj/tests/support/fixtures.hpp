#pragma once

#include "dmaplan/engine/planner.hpp"
#include "dmaplan/model/problem.hpp"

#include <string>
#include <vector>

namespace fixtures {

std::string data_path(const std::string &relative);
dmaplan::model::Problem load_task(const std::string &task_file);

// Every bundled instance (solvable and not), paths relative to data/tasks.
const std::vector<std::string> &mini_suite();
// The six-instance logistics subset used for message-count comparisons.
const std::vector<std::string> &mini_logistics();

dmaplan::engine::RunConfig default_sim_config(std::uint64_t seed = 1);

// Per-sender transmission order of public projections, pulled from a
// simulation message log.
std::vector<std::vector<std::string>> sent_projections_by_agent(
    const std::vector<dmaplan::net::Envelope> &log, int num_agents);

} // namespace fixtures
