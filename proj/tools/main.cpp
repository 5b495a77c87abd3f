#include "dmaplan/engine/planner.hpp"
#include "dmaplan/harness/bench.hpp"
#include "dmaplan/harness/config.hpp"
#include "dmaplan/harness/scores.hpp"
#include "dmaplan/io/pddl.hpp"
#include "dmaplan/io/report.hpp"
#include "dmaplan/io/task_json.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dmaplan;
using nlohmann::json;

namespace {

struct Flags {
    std::string w_out = "1";
    std::string num_waiting = "half";
    std::string who_send = "all";
    std::string num_withheld = "group";
    std::string outgoing_h = "goals-relaxed";
    bool secure = false;
    bool strong_privacy = false;
    std::string mode = "sim";
    double delay_mean_ms = 0.0;
    double delay_stdev_ratio = 0.10;
    std::uint64_t seed = 1;
    double time_limit_s = 300.0;
    int runs = 5;
    std::string config_file;
    std::string config_name = "default";
};

void add_policy_flags(CLI::App *cmd, Flags &flags) {
    cmd->add_option("--w-out", flags.w_out, "outgoing novelty threshold (off, 1, 2)")
        ->check(CLI::IsMember({"off", "1", "2"}));
    cmd->add_option("--num-waiting", flags.num_waiting,
                    "waiting agents required to trigger a release (1, half, all)")
        ->check(CLI::IsMember({"1", "half", "all"}));
    cmd->add_option("--who-send", flags.who_send,
                    "which agents release withheld states (waiting, notwaiting, all)")
        ->check(CLI::IsMember({"waiting", "notwaiting", "all"}));
    cmd->add_option("--num-withheld", flags.num_withheld,
                    "how many withheld states are released (none, 1, group, all)")
        ->check(CLI::IsMember({"none", "1", "group", "all"}));
    cmd->add_option("--outgoing-h", flags.outgoing_h,
                    "heuristic partitions of the outgoing filter (none, goals-relaxed)")
        ->check(CLI::IsMember({"none", "goals-relaxed"}));
    cmd->add_flag("--secure", flags.secure, "never send the same public projection twice");
    cmd->add_flag("--strong-privacy", flags.strong_privacy,
                  "strong-privacy preset: public-only guidance, nothing withheld");
    cmd->add_option("--mode", flags.mode, "execution mode (sim, threads)")
        ->check(CLI::IsMember({"sim", "threads"}));
    cmd->add_option("--delay-mean-ms", flags.delay_mean_ms, "mean gamma message delay");
    cmd->add_option("--delay-stdev-ratio", flags.delay_stdev_ratio,
                    "delay stdev as a fraction of the mean");
    cmd->add_option("--seed", flags.seed, "rng seed");
    cmd->add_option("--time-limit-s", flags.time_limit_s, "per-run time limit in seconds");
    cmd->add_option("--config", flags.config_file, "JSON config file mirroring these flags");
    cmd->add_option("--name", flags.config_name, "configuration label used in reports");
}

// Config file values apply first; explicitly passed flags win.
void merge_config_file(const CLI::App *cmd, Flags &flags) {
    if (flags.config_file.empty())
        return;
    std::ifstream in(flags.config_file);
    if (!in)
        throw CLI::ValidationError("--config", "cannot open '" + flags.config_file + "'");
    json doc = json::parse(in, nullptr, true, true);
    auto maybe = [&](const char *flag, const char *key, auto &slot) {
        const CLI::Option *opt = cmd->get_option_no_throw(flag);
        bool explicitly_set = opt != nullptr && opt->count() > 0;
        if (doc.contains(key) && !explicitly_set)
            slot = doc.at(key).get<std::decay_t<decltype(slot)>>();
    };
    maybe("--w-out", "w_out", flags.w_out);
    maybe("--num-waiting", "num_waiting", flags.num_waiting);
    maybe("--who-send", "who_send", flags.who_send);
    maybe("--num-withheld", "num_withheld", flags.num_withheld);
    maybe("--outgoing-h", "outgoing_h", flags.outgoing_h);
    maybe("--secure", "secure", flags.secure);
    maybe("--strong-privacy", "strong_privacy", flags.strong_privacy);
    maybe("--mode", "mode", flags.mode);
    maybe("--delay-mean-ms", "delay_mean_ms", flags.delay_mean_ms);
    maybe("--delay-stdev-ratio", "delay_stdev_ratio", flags.delay_stdev_ratio);
    maybe("--seed", "seed", flags.seed);
    maybe("--time-limit-s", "time_limit_s", flags.time_limit_s);
    maybe("--runs", "runs", flags.runs);
    maybe("--name", "name", flags.config_name);
}

engine::RunConfig build_run_config(const CLI::App *cmd, const Flags &flags) {
    engine::RunConfig rc;
    rc.search.policy.w_out = harness::w_out_from(flags.w_out);
    rc.search.policy.num_waiting = harness::num_waiting_from(flags.num_waiting);
    rc.search.policy.who_send = harness::who_send_from(flags.who_send);
    rc.search.policy.num_withheld = harness::num_withheld_from(flags.num_withheld);
    rc.search.policy.outgoing_h = harness::outgoing_h_from(flags.outgoing_h);
    rc.search.policy.secure_check = flags.secure;

    if (flags.strong_privacy) {
        if (cmd->count("--num-withheld") && flags.num_withheld != "none")
            throw CLI::ValidationError("--strong-privacy",
                                       "conflicts with --num-withheld " + flags.num_withheld);
        if (cmd->count("--outgoing-h") && flags.outgoing_h != "none")
            throw CLI::ValidationError("--strong-privacy",
                                       "conflicts with --outgoing-h " + flags.outgoing_h);
        if (cmd->count("--w-out") && flags.w_out == "off")
            throw CLI::ValidationError("--strong-privacy", "requires an outgoing threshold");
        rc.search.policy =
            filter::strong_privacy_policy(rc.search.policy.w_out, rc.search.policy.secure_check);
        rc.search.strong_privacy = true;
    }

    rc.mode = harness::mode_from(flags.mode);
    rc.delay.mean_us = flags.delay_mean_ms * 1000.0;
    rc.delay.stdev_ratio = flags.delay_stdev_ratio;
    rc.seed = flags.seed;
    rc.search.time_limit_s = flags.time_limit_s;
    if (flags.runs < 1 || flags.runs % 2 == 0)
        throw CLI::ValidationError("--runs", "must be an odd positive number");
    return rc;
}

void write_output(const std::string &path, const std::string &bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << bytes;
}

int cmd_solve(const CLI::App *cmd, const Flags &flags, const std::string &task_path) {
    engine::RunConfig rc = build_run_config(cmd, flags);
    model::Problem problem = io::load_task_file(task_path);
    engine::RunResult result = engine::solve(problem, rc);

    std::cout << "problem: " << problem.name << "\n";
    std::cout << "outcome: " << engine::to_string(result.outcome) << "\n";
    if (result.outcome == engine::Outcome::SOLVED) {
        model::ValidationResult v = model::validate_plan(problem, result.plan);
        if (!v.valid) {
            std::cout << "plan INVALID: " << v.reason << " (step " << v.failed_index << ")\n";
            return 1;
        }
        std::cout << "plan (" << result.plan.size() << " steps, cost " << v.cost << "):\n";
        for (const model::PlanStep &s : result.plan)
            std::cout << "  " << problem.agents[s.agent] << ": " << s.action_name << "\n";
    }
    std::cout << "time_ms: " << result.elapsed_us / 1000.0 << "\n";
    std::cout << "expanded: " << result.total(&engine::AgentStats::expanded) << "\n";
    std::cout << "sent_messages: " << result.total(&engine::AgentStats::state_messages_sent)
              << "\n";
    std::cout << "withheld_peak: " << result.max_withheld_peak() << "\n";
    if (!result.error.empty())
        std::cerr << "error: " << result.error << "\n";
    return result.outcome == engine::Outcome::SOLVED ? 0 : 1;
}

int cmd_bench(const CLI::App *cmd, const Flags &flags, const std::vector<std::string> &tasks,
              const std::string &out_path) {
    harness::BenchConfig bc;
    bc.task_paths = tasks;
    bc.run = build_run_config(cmd, flags);
    bc.runs_per_problem = flags.runs;
    bc.config_name = flags.config_name;
    harness::ScoreBoard board = harness::run_batch(bc);
    write_output(out_path, io::write_report(bc, board));
    std::cerr << "coverage: " << board.coverage << "/" << board.problems.size() << "\n";
    return 0;
}

int cmd_score(const std::vector<std::string> &reports, const std::string &out_path) {
    std::vector<std::pair<std::string, harness::ConfigResults>> configs;
    for (const std::string &path : reports) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        configs.push_back(io::read_report_results(ss.str()));
    }
    harness::ScoreTable table = harness::ipc_scores(configs);
    write_output(out_path, io::score_table_to_json(table));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"decentralized multi-agent forward-search planner"};
    app.require_subcommand(1);

    Flags solve_flags, bench_flags;
    std::string solve_task;
    std::vector<std::string> bench_tasks, score_reports;
    std::string bench_out, score_out, import_out;
    std::string import_domain, import_problem, import_agent_type = "agent";

    CLI::App *solve = app.add_subcommand("solve", "solve one task and print the plan");
    solve->add_option("task", solve_task, "task JSON file")->required();
    add_policy_flags(solve, solve_flags);

    CLI::App *bench = app.add_subcommand("bench", "run a task batch and write a report");
    bench->add_option("tasks", bench_tasks, "task JSON files")->required();
    bench->add_option("--out", bench_out, "report output path (default stdout)");
    bench->add_option("--runs", bench_flags.runs, "runs per problem (odd)");
    add_policy_flags(bench, bench_flags);

    CLI::App *import = app.add_subcommand("import-pddl", "ground a STRIPS-subset PDDL pair");
    import->add_option("domain", import_domain, "domain PDDL file")->required();
    import->add_option("problem", import_problem, "problem PDDL file")->required();
    import->add_option("--agent-type", import_agent_type, "PDDL type whose objects are agents");
    import->add_option("--out", import_out, "task JSON output path (default stdout)");

    CLI::App *score = app.add_subcommand("score", "combine reports into competition scores");
    score->add_option("reports", score_reports, "two or more report JSON files")->required();
    score->add_option("--out", score_out, "score output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed()) {
            merge_config_file(solve, solve_flags);
            return cmd_solve(solve, solve_flags, solve_task);
        }
        if (bench->parsed()) {
            merge_config_file(bench, bench_flags);
            return cmd_bench(bench, bench_flags, bench_tasks, bench_out);
        }
        if (import->parsed()) {
            write_output(import_out,
                         io::import_pddl_files(import_domain, import_problem, import_agent_type));
            return 0;
        }
        if (score->parsed())
            return cmd_score(score_reports, score_out);
    } catch (const CLI::Error &e) {
        std::cerr << e.get_name() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
