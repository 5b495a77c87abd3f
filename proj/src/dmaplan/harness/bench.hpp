#pragma once

#include "dmaplan/engine/planner.hpp"

#include <string>
#include <vector>

namespace dmaplan::harness {

struct BenchConfig {
    std::vector<std::string> task_paths;
    engine::RunConfig run;
    int runs_per_problem = 5; // must be odd
    std::string config_name = "default";
};

struct RunRecord {
    std::uint64_t seed = 0;
    engine::Outcome outcome = engine::Outcome::ERROR;
    double time_s = 0.0; // virtual seconds in SIM, wall in THREADS
    double cost = 0.0;
    std::uint64_t expanded = 0;
    std::uint64_t sent_messages = 0;
    std::uint64_t withheld_peak = 0;
    model::Plan plan;
};

struct ProblemRuns {
    std::string problem;
    std::string path;
    bool load_error = false;
    std::string error_message;
    std::vector<RunRecord> runs;

    // aggregation (see aggregate_runs)
    bool solved = false;
    double median_time_s = 0.0;
    double median_cost = 0.0;
    std::uint64_t median_expanded = 0;
    std::uint64_t median_sent = 0;
    std::uint64_t withheld_peak = 0;
    model::Plan plan; // representative validated plan
};

struct ScoreBoard {
    std::vector<ProblemRuns> problems;
    int coverage = 0;
    double avg_time_s = 0.0;  // over solved problems
    double avg_cost = 0.0;    // over solved problems
    std::uint64_t total_expanded = 0;
    std::uint64_t total_sent = 0;
    std::uint64_t withheld_peak = 0;
};

// Unsolved exactly when timeouts form a majority (for five runs: more than
// two time out); otherwise solved iff some finishing run produced a valid
// plan. Medians are over finishing runs (cost over plan-producing runs).
void aggregate_runs(ProblemRuns &pr);

double median(std::vector<double> values); // empty -> 0

// Runs every task `runs_per_problem` times with derived per-run seeds; a
// task that fails to load is marked as an error and the batch continues.
// Returned plans are validated before being counted.
ScoreBoard run_batch(const BenchConfig &config);

} // namespace dmaplan::harness
