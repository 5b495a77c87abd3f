#include "support/fixtures.hpp"

#include "dmaplan/io/task_json.hpp"

namespace fixtures {

std::string data_path(const std::string &relative) {
    return std::string(DMAPLAN_TEST_DATA) + "/" + relative;
}

dmaplan::model::Problem load_task(const std::string &task_file) {
    return dmaplan::io::load_task_file(data_path("tasks/" + task_file));
}

const std::vector<std::string> &mini_suite() {
    static const std::vector<std::string> suite = {
        "solo_trivial.json", "solo_chain.json",  "solo_unreachable.json",
        "handoff2.json",     "witness_novelty.json", "mbs_private_goals.json",
        "logi3.json",        "ring4.json",       "blocks22.json",
        "unsolvable2.json",
        "minilog_a.json",    "minilog_b.json",   "minilog_c.json",
        "minilog_d.json",    "minilog_e.json",   "minilog_f.json",
    };
    return suite;
}

const std::vector<std::string> &mini_logistics() {
    static const std::vector<std::string> set = {
        "minilog_a.json", "minilog_b.json", "minilog_c.json",
        "minilog_d.json", "minilog_e.json", "minilog_f.json",
    };
    return set;
}

dmaplan::engine::RunConfig default_sim_config(std::uint64_t seed) {
    dmaplan::engine::RunConfig config;
    config.mode = dmaplan::engine::RunMode::SIM;
    config.seed = seed;
    config.search.time_limit_s = 300.0;
    return config;
}

std::vector<std::vector<std::string>> sent_projections_by_agent(
    const std::vector<dmaplan::net::Envelope> &log, int num_agents) {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(num_agents));
    std::vector<std::uint64_t> last_seq(static_cast<std::size_t>(num_agents), UINT64_MAX);
    for (const dmaplan::net::Envelope &env : log) {
        if (env.kind != dmaplan::net::MsgKind::STATE)
            continue;
        std::size_t s = static_cast<std::size_t>(env.sender);
        if (last_seq[s] == env.seq)
            continue; // same broadcast event, another recipient
        last_seq[s] = env.seq;
        out[s].push_back(std::get<dmaplan::net::StatePayload>(env.payload).public_bytes);
    }
    return out;
}

} // namespace fixtures
