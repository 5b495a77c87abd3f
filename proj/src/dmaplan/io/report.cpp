#include "dmaplan/io/report.hpp"

#include "dmaplan/harness/config.hpp"
#include "dmaplan/io/task_json.hpp"

#include <json.hpp>

namespace dmaplan::io {

using nlohmann::json;
using namespace harness;

namespace {

json plan_json(const model::Plan &plan) {
    json arr = json::array();
    for (const model::PlanStep &s : plan)
        arr.push_back(json::array({s.agent, s.action_name}));
    return arr;
}

json config_json(const harness::BenchConfig &config) {
    const engine::RunConfig &run = config.run;
    json c;
    c["name"] = config.config_name;
    c["mode"] = run.mode == engine::RunMode::SIM ? "sim" : "threads";
    c["seed"] = run.seed;
    c["runs"] = config.runs_per_problem;
    c["time_limit_s"] = run.search.time_limit_s;
    c["delay_mean_ms"] = run.delay.mean_us / 1000.0;
    c["delay_stdev_ratio"] = run.delay.stdev_ratio;
    c["strong_privacy"] = run.search.strong_privacy;
    c["w_out"] = w_out_name(run.search.policy.w_out);
    c["num_waiting"] = num_waiting_name(run.search.policy.num_waiting);
    c["who_send"] = who_send_name(run.search.policy.who_send);
    c["num_withheld"] = num_withheld_name(run.search.policy.num_withheld);
    c["secure"] = run.search.policy.secure_check;
    c["outgoing_h"] = outgoing_h_name(run.search.policy.outgoing_h);
    return c;
}

} // namespace

std::string write_report(const harness::BenchConfig &config, const harness::ScoreBoard &board) {
    json doc;
    doc["config"] = config_json(config);

    json problems = json::array();
    for (const harness::ProblemRuns &pr : board.problems) {
        json p;
        p["problem"] = pr.problem;
        if (pr.load_error) {
            p["error"] = pr.error_message;
            p["solved"] = false;
            problems.push_back(p);
            continue;
        }
        p["solved"] = pr.solved;
        p["plan"] = plan_json(pr.plan);
        p["cost"] = pr.median_cost;
        p["wall_ms"] = pr.median_time_s * 1000.0;
        p["expanded"] = pr.median_expanded;
        p["sent_messages"] = pr.median_sent;
        p["withheld_peak"] = pr.withheld_peak;
        json runs = json::array();
        for (const harness::RunRecord &r : pr.runs) {
            json rr;
            rr["seed"] = r.seed;
            rr["outcome"] = engine::to_string(r.outcome);
            rr["wall_ms"] = r.time_s * 1000.0;
            rr["cost"] = r.cost;
            rr["expanded"] = r.expanded;
            rr["sent_messages"] = r.sent_messages;
            rr["withheld_peak"] = r.withheld_peak;
            runs.push_back(rr);
        }
        p["runs"] = runs;
        problems.push_back(p);
    }
    doc["problems"] = problems;

    json agg;
    agg["problems"] = board.problems.size();
    agg["coverage"] = board.coverage;
    agg["avg_time_ms"] = board.avg_time_s * 1000.0;
    agg["avg_cost"] = board.avg_cost;
    agg["total_expanded"] = board.total_expanded;
    agg["total_sent_messages"] = board.total_sent;
    agg["withheld_peak"] = board.withheld_peak;
    doc["aggregate"] = agg;

    return doc.dump(2) + "\n";
}

std::pair<std::string, harness::ConfigResults> read_report_results(const std::string &bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception &e) {
        throw ParseError(std::string("report: invalid JSON: ") + e.what());
    }
    harness::ConfigResults results;
    std::string name = doc.value("/config/name"_json_pointer, std::string("unnamed"));
    for (const json &p : doc.at("problems")) {
        if (p.contains("error"))
            continue;
        harness::ScoreEntry e;
        e.solved = p.at("solved").get<bool>();
        e.time_s = p.at("wall_ms").get<double>() / 1000.0;
        e.cost = p.at("cost").get<double>();
        results[p.at("problem").get<std::string>()] = e;
    }
    return {name, results};
}

std::string score_table_to_json(const harness::ScoreTable &table) {
    json doc;
    doc["problems"] = table.problems;
    doc["shared_solved"] = table.shared_solved;
    json configs = json::array();
    for (std::size_t c = 0; c < table.configs.size(); ++c) {
        json entry;
        entry["name"] = table.configs[c];
        entry["quality_score"] = table.quality_total[c];
        entry["time_score"] = table.time_total[c];
        entry["avg_time_s"] = table.avg_time_s[c];
        entry["avg_cost"] = table.avg_cost[c];
        entry["per_problem_quality"] = table.quality[c];
        entry["per_problem_time"] = table.time[c];
        configs.push_back(entry);
    }
    doc["configs"] = configs;
    return doc.dump(2) + "\n";
}

} // namespace dmaplan::io
