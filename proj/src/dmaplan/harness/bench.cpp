#include "dmaplan/harness/bench.hpp"

#include "dmaplan/io/task_json.hpp"

#include <algorithm>

namespace dmaplan::harness {

double median(std::vector<double> values) {
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1)
        return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void aggregate_runs(ProblemRuns &pr) {
    int timeouts = 0;
    std::vector<double> finish_times, costs, expanded, sent;
    const RunRecord *best_plan = nullptr;
    for (const RunRecord &r : pr.runs) {
        if (r.outcome == engine::Outcome::TIMEOUT) {
            ++timeouts;
            continue;
        }
        finish_times.push_back(r.time_s);
        expanded.push_back(static_cast<double>(r.expanded));
        sent.push_back(static_cast<double>(r.sent_messages));
        if (r.outcome == engine::Outcome::SOLVED) {
            costs.push_back(r.cost);
            if (!best_plan || r.cost < best_plan->cost)
                best_plan = &r;
        }
        pr.withheld_peak = std::max(pr.withheld_peak, r.withheld_peak);
    }
    const int n = static_cast<int>(pr.runs.size());
    const bool timeout_majority = timeouts > n / 2;
    pr.solved = !timeout_majority && best_plan != nullptr;
    pr.median_time_s = median(finish_times);
    pr.median_cost = median(costs);
    pr.median_expanded = static_cast<std::uint64_t>(median(expanded) + 0.5);
    pr.median_sent = static_cast<std::uint64_t>(median(sent) + 0.5);
    if (best_plan)
        pr.plan = best_plan->plan;
}

ScoreBoard run_batch(const BenchConfig &config) {
    ScoreBoard board;
    for (const std::string &path : config.task_paths) {
        ProblemRuns pr;
        pr.path = path;
        model::Problem problem;
        try {
            problem = io::load_task_file(path);
        } catch (const std::exception &e) {
            pr.load_error = true;
            pr.error_message = e.what();
            pr.problem = path;
            board.problems.push_back(std::move(pr));
            continue;
        }
        pr.problem = problem.name;

        for (int r = 0; r < config.runs_per_problem; ++r) {
            engine::RunConfig rc = config.run;
            rc.seed = util::derive_seed(config.run.seed, static_cast<std::uint64_t>(r));
            engine::RunResult result = engine::solve(problem, rc);

            RunRecord record;
            record.seed = rc.seed;
            record.outcome = result.outcome;
            record.time_s = static_cast<double>(result.elapsed_us) / 1e6;
            record.expanded = result.total(&engine::AgentStats::expanded);
            record.sent_messages = result.total(&engine::AgentStats::state_messages_sent);
            record.withheld_peak = result.max_withheld_peak();
            if (result.outcome == engine::Outcome::SOLVED) {
                model::ValidationResult v = model::validate_plan(problem, result.plan);
                if (v.valid) {
                    record.cost = v.cost;
                    record.plan = result.plan;
                } else {
                    // Never count an invalid plan as a solution.
                    record.outcome = engine::Outcome::ERROR;
                }
            }
            pr.runs.push_back(std::move(record));
        }
        aggregate_runs(pr);
        board.problems.push_back(std::move(pr));
    }

    double time_sum = 0.0, cost_sum = 0.0;
    for (const ProblemRuns &pr : board.problems) {
        if (pr.load_error)
            continue;
        board.total_expanded += pr.median_expanded;
        board.total_sent += pr.median_sent;
        board.withheld_peak = std::max(board.withheld_peak, pr.withheld_peak);
        if (pr.solved) {
            ++board.coverage;
            time_sum += pr.median_time_s;
            cost_sum += pr.median_cost;
        }
    }
    if (board.coverage > 0) {
        board.avg_time_s = time_sum / board.coverage;
        board.avg_cost = cost_sum / board.coverage;
    }
    return board;
}

} // namespace dmaplan::harness
