#pragma once

#include "dmaplan/harness/bench.hpp"
#include "dmaplan/harness/scores.hpp"

#include <string>

namespace dmaplan::io {

// Deterministic JSON (sorted keys, trailing newline) for a finished batch.
std::string write_report(const harness::BenchConfig &config, const harness::ScoreBoard &board);

// Pulls {solved, median time, median cost} per problem plus the config name
// back out of a report file, for score aggregation across configurations.
std::pair<std::string, harness::ConfigResults> read_report_results(const std::string &bytes);

std::string score_table_to_json(const harness::ScoreTable &table);

} // namespace dmaplan::io
