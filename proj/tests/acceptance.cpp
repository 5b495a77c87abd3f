// Acceptance suite: each criterion runs standalone, prints one line, and the
// binary exits nonzero if any selected criterion fails.

#include "dmaplan/engine/planner.hpp"
#include "dmaplan/harness/bench.hpp"
#include "dmaplan/harness/scores.hpp"
#include "dmaplan/io/report.hpp"
#include "dmaplan/io/task_json.hpp"
#include "dmaplan/net/delay.hpp"
#include "dmaplan/novelty/novelty_table.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>

using namespace dmaplan;
using engine::Outcome;
using engine::RunConfig;
using engine::RunResult;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool condition, const std::string &what) {
        if (!condition) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

RunConfig base_config(std::uint64_t seed = 1) {
    return fixtures::default_sim_config(seed);
}

// ---------------------------------------------------------------------- C1

void c1_soundness(Check &c) {
    int solved = 0, instances = 0;
    for (const std::string &task : fixtures::mini_suite()) {
        ++instances;
        model::Problem p = fixtures::load_task(task);
        RunResult r = engine::solve(p, base_config());
        if (r.outcome == Outcome::SOLVED) {
            model::ValidationResult v = model::validate_plan(p, r.plan);
            c.expect(v.valid, task + ": returned plan invalid (" + v.reason + ")");
            ++solved;
        }
        c.expect(r.outcome != Outcome::ERROR, task + ": engine error " + r.error);
    }
    c.detail << solved << "/" << instances << " instances solved, all plans valid";
}

// ---------------------------------------------------------------------- C2

void c2_completeness(Check &c) {
    for (const std::string &task : fixtures::mini_suite()) {
        model::Problem p = fixtures::load_task(task);
        oracle::SearchResult ref = oracle::search(p);
        RunConfig config = base_config();
        config.search.policy.num_withheld = filter::NumWithheld::GROUP;
        RunResult r = engine::solve(p, config);
        if (ref.solvable)
            c.expect(r.outcome == Outcome::SOLVED,
                     task + ": oracle-solvable but engine returned " +
                         engine::to_string(r.outcome));
        else
            c.expect(r.outcome == Outcome::EXHAUSTED,
                     task + ": oracle-unsolvable but engine returned " +
                         engine::to_string(r.outcome));
    }
}

// ---------------------------------------------------------------------- C3

void c3_incompleteness_witness(Check &c) {
    model::Problem p = fixtures::load_task("witness_novelty.json");

    RunConfig none = base_config();
    none.search.policy.w_out = filter::WOut::W1;
    none.search.policy.num_withheld = filter::NumWithheld::NONE;
    RunResult r_none = engine::solve(p, none);
    c.expect(r_none.outcome == Outcome::EXHAUSTED,
             std::string("num_withheld=none should exhaust, got ") +
                 engine::to_string(r_none.outcome));

    RunConfig group = base_config();
    group.search.policy.num_withheld = filter::NumWithheld::GROUP;
    RunResult r_group = engine::solve(p, group);
    c.expect(r_group.outcome == Outcome::SOLVED,
             std::string("num_withheld=group should solve, got ") +
                 engine::to_string(r_group.outcome));
    if (r_group.outcome == Outcome::SOLVED)
        c.expect(model::validate_plan(p, r_group.plan).valid, "group-mode plan invalid");

    // deterministic: the witness behaves identically on a second run
    RunResult r_none2 = engine::solve(p, none);
    c.expect(r_none2.outcome == r_none.outcome, "witness not deterministic");
}

// ---------------------------------------------------------------------- C4

void c4_strong_privacy(Check &c) {
    model::Problem a = fixtures::load_task("strong_a.json");
    model::Problem b = fixtures::load_task("strong_b.json");
    c.expect(a.num_public_facts() == b.num_public_facts(), "variants' public parts differ");

    for (std::uint64_t seed : {std::uint64_t(1), std::uint64_t(9)}) {
        for (double delay_ms : {0.0, 10.0}) {
            RunConfig config = base_config(seed);
            config.search.policy = filter::strong_privacy_policy();
            config.search.strong_privacy = true;
            config.delay.mean_us = delay_ms * 1000.0;
            config.keep_message_log = true;

            engine::SimArtifacts ra = engine::solve_sim_logged(a, config);
            engine::SimArtifacts rb = engine::solve_sim_logged(b, config);
            auto seq_a = fixtures::sent_projections_by_agent(ra.message_log, a.num_agents());
            auto seq_b = fixtures::sent_projections_by_agent(rb.message_log, b.num_agents());
            c.expect(!seq_a[0].empty() && !seq_a[1].empty(),
                     "a variant run sent nothing; comparison would be vacuous");
            for (int agent = 0; agent < a.num_agents(); ++agent) {
                std::ostringstream what;
                what << "agent " << agent << " sent sequences differ (seed " << seed << ", delay "
                     << delay_ms << "ms)";
                c.expect(seq_a[static_cast<std::size_t>(agent)] ==
                             seq_b[static_cast<std::size_t>(agent)],
                         what.str());
            }
        }
    }
}

// ---------------------------------------------------------------------- C5

void c5_secure_check(Check &c) {
    for (const std::string &task : fixtures::mini_suite()) {
        model::Problem p = fixtures::load_task(task);
        RunConfig config = base_config();
        config.search.policy.secure_check = true;
        config.keep_message_log = true;
        engine::SimArtifacts art = engine::solve_sim_logged(p, config);

        oracle::SearchResult ref = oracle::search(p);
        auto sequences = fixtures::sent_projections_by_agent(art.message_log, p.num_agents());
        for (int agent = 0; agent < p.num_agents(); ++agent) {
            const auto &seq = sequences[static_cast<std::size_t>(agent)];
            std::set<std::string> distinct(seq.begin(), seq.end());
            c.expect(distinct.size() == seq.size(),
                     task + ": agent " + std::to_string(agent) + " repeated a projection");
            c.expect(seq.size() <= ref.reachable_public_projections.size(),
                     task + ": sent more projections than are reachable");
            for (const std::string &proj : seq)
                c.expect(ref.reachable_public_projections.count(proj) == 1,
                         task + ": sent an unreachable projection");
        }
    }
}

// ---------------------------------------------------------------------- C6

void c6_message_reduction(Check &c) {
    auto total_sent = [&](filter::WOut w) {
        std::uint64_t total = 0;
        for (const std::string &task : fixtures::mini_logistics()) {
            model::Problem p = fixtures::load_task(task);
            RunConfig config = base_config();
            config.search.policy.w_out = w;
            config.search.policy.num_withheld = filter::NumWithheld::NONE;
            RunResult r = engine::solve(p, config);
            total += r.total(&engine::AgentStats::state_messages_sent);
        }
        return total;
    };
    std::uint64_t sent1 = total_sent(filter::WOut::W1);
    std::uint64_t sent2 = total_sent(filter::WOut::W2);
    std::uint64_t sent_off = total_sent(filter::WOut::OFF);
    c.detail << "sent: w1=" << sent1 << " w2=" << sent2 << " off=" << sent_off;
    c.expect(sent1 <= sent2, "sent(w1) > sent(w2)");
    c.expect(sent2 <= sent_off, "sent(w2) > sent(off)");
    c.expect(static_cast<double>(sent1) <= 0.70 * static_cast<double>(sent_off),
             "w1 total above 70% of the unfiltered total");
}

// ---------------------------------------------------------------------- C7

void c7_outgoing_oracle_equivalence(Check &c) {
    util::Rng rng(0xc7);
    int streams = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int cap = 1 + static_cast<int>(rng.next_below(2));
        const int npub = 1 + static_cast<int>(rng.next_below(10));
        const bool with_h = rng.next_below(2) == 0;
        novelty::OutgoingNoveltyTable table(npub, cap);
        oracle::BruteNovelty ref(cap, npub + 1);
        ++streams;
        for (int step = 0; step < 25; ++step) {
            std::vector<std::uint32_t> atoms;
            kernels::Bitset proj(static_cast<std::size_t>(npub));
            for (int a = 0; a < npub; ++a)
                if (rng.next_below(3) == 0) {
                    atoms.push_back(static_cast<std::uint32_t>(a));
                    proj.set(static_cast<std::size_t>(a));
                }
            std::uint64_t key = with_h ? rng.next_below(4) : 0;
            int got = table.probe(proj, key);
            int want = ref.probe(atoms, key);
            if (got != want) {
                c.expect(false, "probe mismatch at stream " + std::to_string(rep));
                return;
            }
            if (got <= cap) {
                table.commit(proj, key);
                ref.commit(atoms, key);
            }
        }
    }
    c.detail << streams << " randomized streams, decisions identical at caps 1 and 2";
}

// ---------------------------------------------------------------------- C8

void c8_gamma_statistics(Check &c) {
    net::DelayModel model{100000.0, 0.10};
    util::Rng rng(20250808);
    const int n = 10000;
    std::vector<double> samples;
    samples.reserve(n);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = static_cast<double>(net::sample_delay_us(model, rng));
        samples.push_back(v);
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / n;
    double stdev = std::sqrt(sum2 / n - mean * mean);
    c.detail << "mean=" << mean / 1000.0 << "ms stdev=" << stdev / 1000.0 << "ms";
    c.expect(std::fabs(mean - 100000.0) <= 5000.0, "sample mean outside ±5%");
    c.expect(std::fabs(stdev - 10000.0) <= 1500.0, "sample stdev outside ±15%");

    std::sort(samples.begin(), samples.end());
    double d_max = 0.0;
    for (int i = 0; i < n; ++i) {
        double cdf = oracle::gamma_cdf(model.shape(), model.scale(), samples[static_cast<std::size_t>(i)]);
        d_max = std::max(d_max, std::fabs((i + 1.0) / n - cdf));
        d_max = std::max(d_max, std::fabs(cdf - static_cast<double>(i) / n));
    }
    double critical = 1.62762 / std::sqrt(static_cast<double>(n)); // alpha = 0.01
    c.detail << " ks=" << d_max << " crit=" << critical;
    c.expect(d_max < critical, "KS test failed at alpha 0.01");
}

// ---------------------------------------------------------------------- C9

void c9_delay_robustness(Check &c) {
    auto solved_set = [&](double delay_ms, std::vector<std::string> *invalid) {
        std::set<std::string> solved;
        for (const std::string &task : fixtures::mini_suite()) {
            model::Problem p = fixtures::load_task(task);
            RunConfig config = base_config();
            config.delay.mean_us = delay_ms * 1000.0;
            RunResult r = engine::solve(p, config);
            if (r.outcome == Outcome::SOLVED) {
                solved.insert(task);
                if (!model::validate_plan(p, r.plan).valid && invalid)
                    invalid->push_back(task);
            }
        }
        return solved;
    };
    std::vector<std::string> invalid;
    std::set<std::string> base = solved_set(0.0, &invalid);
    std::set<std::string> d10 = solved_set(10.0, &invalid);
    std::set<std::string> d100 = solved_set(100.0, &invalid);
    c.expect(base == d10, "solved set changed at 10ms mean delay");
    c.expect(base == d100, "solved set changed at 100ms mean delay");

    std::set<std::string> d1000 = solved_set(1000.0, &invalid);
    c.detail << "solved: 0ms=" << base.size() << " 10ms=" << d10.size()
             << " 100ms=" << d100.size() << " 1s=" << d1000.size();
    c.expect(d1000.size() <= base.size(), "more instances solved at 1s delay than at none");
    c.expect(invalid.empty(), "invalid plan under delay");
}

// --------------------------------------------------------------------- C10

void c10_determinism(Check &c) {
    harness::BenchConfig bc;
    for (const std::string &task : {std::string("handoff2.json"), std::string("minilog_c.json"),
                                    std::string("mbs_private_goals.json")})
        bc.task_paths.push_back(fixtures::data_path("tasks/" + task));
    bc.run = base_config(77);
    bc.runs_per_problem = 3;

    std::string first = io::write_report(bc, harness::run_batch(bc));
    for (int rep = 1; rep < 5; ++rep) {
        std::string again = io::write_report(bc, harness::run_batch(bc));
        c.expect(again == first, "report bytes differ on repeat " + std::to_string(rep));
    }
    c.detail << "5 repeated batches, byte-identical reports";
}

// --------------------------------------------------------------------- C11

void c11_scoring(Check &c) {
    using harness::ConfigResults;
    ConfigResults a{{"p1", {true, 10.0, 4.0}}, {"p2", {true, 2.0, 3.0}}};
    ConfigResults b{{"p1", {true, 100.0, 2.0}}, {"p2", {true, 2.0, 6.0}}};
    ConfigResults d{{"p1", {false, 0.0, 0.0}}, {"p2", {true, 20.0, 3.0}}};
    harness::ScoreTable t = harness::ipc_scores({{"a", a}, {"b", b}, {"d", d}});

    // p1: C*=2, T*=10 -> a: q=0.5 t=1.0; b: q=1.0 t=1/(1+log10(10))=0.5; d: 0
    // p2: C*=3, T*=2  -> a: q=1.0 t=1.0; b: q=0.5 t=1.0; d: q=1.0 t=1/(1+1)=0.5
    auto exact = [&](double got, double want, const char *what) {
        c.expect(std::fabs(got - want) < 1e-12, std::string(what) + " mismatch");
    };
    exact(t.quality[0].at("p1"), 0.5, "a q(p1)");
    exact(t.quality[1].at("p1"), 1.0, "b q(p1)");
    exact(t.quality[2].at("p1"), 0.0, "d q(p1)");
    exact(t.time[0].at("p1"), 1.0, "a t(p1)");
    exact(t.time[1].at("p1"), 0.5, "b t(p1)");
    exact(t.time[2].at("p1"), 0.0, "d t(p1)");
    exact(t.quality[0].at("p2"), 1.0, "a q(p2)");
    exact(t.quality[1].at("p2"), 0.5, "b q(p2)");
    exact(t.quality[2].at("p2"), 1.0, "d q(p2)");
    exact(t.time[2].at("p2"), 0.5, "d t(p2)");
    exact(t.quality_total[0], 1.5, "a quality total");
    exact(t.time_total[1], 1.5, "b time total");
}

// --------------------------------------------------------------------- C12

void c12_median_protocol(Check &c) {
    for (unsigned mask = 0; mask < 32; ++mask) {
        harness::ProblemRuns pr;
        int timeouts = 0;
        for (int i = 0; i < 5; ++i) {
            harness::RunRecord r;
            if (mask & (1u << i)) {
                r.outcome = Outcome::TIMEOUT;
                r.time_s = 300.0;
                ++timeouts;
            } else {
                r.outcome = Outcome::SOLVED;
                r.time_s = 1.0 + i;
                r.cost = 1.0;
                r.plan = {{0, "x"}};
            }
            pr.runs.push_back(r);
        }
        harness::aggregate_runs(pr);
        bool want_solved = timeouts <= 2;
        if (pr.solved != want_solved) {
            c.expect(false, "pattern " + std::to_string(mask) + " aggregated wrongly");
            return;
        }
    }
    c.detail << "all 32 timeout patterns aggregate per the majority rule";
}

struct Criterion {
    int id;
    const char *name;
    double budget_s; // stated runtime bound, 0 = none
    std::function<void(Check &)> run;
};

} // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);

    const std::vector<Criterion> criteria = {
        {1, "soundness over the mini-suite", 30.0, c1_soundness},
        {2, "completeness vs the centralized oracle", 0.0, c2_completeness},
        {3, "incompleteness witness (none vs group)", 0.0, c3_incompleteness_witness},
        {4, "strong-privacy indistinguishability", 0.0, c4_strong_privacy},
        {5, "secure-check projection audit", 0.0, c5_secure_check},
        {6, "message reduction on mini-logistics", 60.0, c6_message_reduction},
        {7, "outgoing-novelty oracle equivalence", 0.0, c7_outgoing_oracle_equivalence},
        {8, "gamma delay statistics", 5.0, c8_gamma_statistics},
        {9, "delay robustness", 300.0, c9_delay_robustness},
        {10, "simulation determinism", 0.0, c10_determinism},
        {11, "competition score formulas", 0.0, c11_scoring},
        {12, "median-of-five protocol", 0.0, c12_median_protocol},
    };

    bool all_ok = true;
    for (const Criterion &criterion : criteria) {
        if (only != 0 && criterion.id != only)
            continue;
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception &e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_s > 0.0 && elapsed > criterion.budget_s) {
            check.ok = false;
            check.detail << "; exceeded " << criterion.budget_s << "s budget";
        }
        std::printf("[%s] C%-2d %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", criterion.id,
                    criterion.name, elapsed, check.detail.str().empty() ? "" : " — ",
                    check.detail.str().c_str());
        all_ok = all_ok && check.ok;
    }
    return all_ok ? 0 : 1;
}
