#pragma once

#include <map>
#include <string>
#include <vector>

namespace dmaplan::harness {

struct ScoreEntry {
    bool solved = false;
    double time_s = 0.0;
    double cost = 0.0;
};

// problem name -> result for one configuration
using ConfigResults = std::map<std::string, ScoreEntry>;

struct ScoreTable {
    std::vector<std::string> configs;
    std::vector<std::string> problems; // shared problem set, sorted
    // per config (parallel to `configs`)
    std::vector<double> quality_total;
    std::vector<double> time_total;
    std::vector<std::map<std::string, double>> quality; // per problem
    std::vector<std::map<std::string, double>> time;
    // averages over problems solved by all compared configs
    std::vector<double> avg_time_s;
    std::vector<double> avg_cost;
    int shared_solved = 0;
};

// Competition-style scores over the shared problem set. Per problem:
// quality = C*/C with C* the best cost among the compared configs (0 when
// unsolved); time = 1 when T <= max(T*, 1s), else 1/(1 + log10(T/T*)), T*
// the best time (0 when unsolved). Throws std::invalid_argument when fewer
// than two configs are given or their problem sets are disjoint.
ScoreTable ipc_scores(const std::vector<std::pair<std::string, ConfigResults>> &configs);

} // namespace dmaplan::harness
