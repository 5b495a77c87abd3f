#include "dmaplan/engine/planner.hpp"

#include "dmaplan/engine/agent.hpp"
#include "dmaplan/net/sim_transport.hpp"
#include "dmaplan/net/socket_transport.hpp"

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

namespace dmaplan::engine {

namespace {

// Virtual cost of one scheduler quantum (message handling + one expansion).
constexpr std::uint64_t kStepTickUs = 100;
// Hard wall-clock guard for simulation runs.
constexpr double kSimWallGuardS = 600.0;

struct PostedResult {
    Outcome outcome;
    model::Plan plan;
    double cost;
    std::string error;
};

RunResult run_sim(const model::Problem &problem, const RunConfig &config,
                  std::vector<net::Envelope> *log_out) {
    const int n = problem.num_agents();
    net::SimTransport transport(n, config.delay, config.seed, log_out != nullptr);

    std::optional<PostedResult> posted;
    ResultSink sink{[&](Outcome o, const model::Plan &p, double c, const std::string &e) {
        if (!posted)
            posted = PostedResult{o, p, c, e};
    }};

    std::vector<std::unique_ptr<AgentWorker>> workers;
    for (int i = 0; i < n; ++i)
        workers.push_back(
            std::make_unique<AgentWorker>(problem, i, config.search, transport, config.seed, sink));

    std::vector<std::uint64_t> clock(static_cast<std::size_t>(n), 0);
    std::vector<char> runnable(static_cast<std::size_t>(n), 1);
    const std::uint64_t limit_us =
        static_cast<std::uint64_t>(config.search.time_limit_s * 1e6);
    const auto wall_start = std::chrono::steady_clock::now();

    RunResult result;
    std::uint64_t now = 0;
    for (std::uint64_t iter = 0;; ++iter) {
        bool all_done = true;
        for (const auto &w : workers)
            all_done = all_done && w->done();
        if (all_done) {
            result.outcome = posted ? posted->outcome : Outcome::ERROR;
            break;
        }
        if (posted && posted->outcome == Outcome::ERROR) {
            result.outcome = Outcome::ERROR;
            break;
        }

        // Next agent to act: earliest clock among agents with local work,
        // else earliest pending delivery.
        std::uint64_t best = UINT64_MAX;
        int who = -1;
        for (int i = 0; i < n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            if (workers[ui]->done())
                continue;
            std::uint64_t t;
            if (runnable[ui] || workers[ui]->has_local_work()) {
                t = clock[ui];
            } else {
                std::uint64_t d = transport.next_delivery_us(i);
                if (d == UINT64_MAX)
                    continue;
                t = std::max(clock[ui], d);
            }
            if (t < best) {
                best = t;
                who = i;
            }
        }
        if (who < 0) {
            result.outcome = Outcome::ERROR;
            result.error = "simulation deadlock: no runnable agent and no pending deliveries";
            break;
        }
        if (best > limit_us) {
            result.outcome = Outcome::TIMEOUT;
            now = limit_us;
            break;
        }

        const std::size_t uw = static_cast<std::size_t>(who);
        clock[uw] = std::max(clock[uw], best);
        now = std::max(now, clock[uw]);
        transport.set_now(clock[uw]);
        transport.set_recipient_clock(clock[uw]);
        for (const net::Envelope &env : transport.drain(who))
            workers[uw]->handle(env);
        bool did = workers[uw]->step();
        runnable[uw] = did ? 1 : 0;
        clock[uw] += kStepTickUs;

        if ((iter & 2047) == 0) {
            double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                        wall_start)
                              .count();
            if (wall > kSimWallGuardS) {
                result.outcome = Outcome::TIMEOUT;
                result.error = "wall-clock guard tripped";
                break;
            }
        }
    }

    // A result posted before the limit stands even if the loop stopped while
    // TERMINATE envelopes were still in flight.
    if (posted) {
        result.outcome = posted->outcome;
        result.plan = posted->plan;
        result.cost = posted->cost;
        result.error = posted->error;
    }
    result.elapsed_us = now;
    for (const auto &w : workers)
        result.agents.push_back(w->snapshot());
    if (log_out)
        *log_out = transport.log();
    return result;
}

RunResult run_threads(const model::Problem &problem, const RunConfig &config);

RunResult run_threads_guarded(const model::Problem &problem, const RunConfig &config) {
    try {
        return run_threads(problem, config);
    } catch (const std::exception &e) {
        RunResult result;
        result.outcome = Outcome::ERROR;
        result.error = e.what();
        result.agents.resize(static_cast<std::size_t>(problem.num_agents()));
        return result;
    }
}

RunResult run_threads(const model::Problem &problem, const RunConfig &config) {
    const int n = problem.num_agents();
    net::SocketTransport transport(n, config.delay, config.seed);

    std::mutex result_mutex;
    std::optional<PostedResult> posted;
    ResultSink sink{[&](Outcome o, const model::Plan &p, double c, const std::string &e) {
        std::lock_guard<std::mutex> lock(result_mutex);
        if (!posted)
            posted = PostedResult{o, p, c, e};
    }};

    std::vector<std::unique_ptr<AgentWorker>> workers;
    for (int i = 0; i < n; ++i)
        workers.push_back(
            std::make_unique<AgentWorker>(problem, i, config.search, transport, config.seed, sink));

    std::atomic<bool> stop{false};
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_s = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::vector<std::thread> threads;
    for (int i = 0; i < n; ++i) {
        threads.emplace_back([&, i] {
            AgentWorker &w = *workers[static_cast<std::size_t>(i)];
            while (!stop.load(std::memory_order_relaxed) && !w.done()) {
                std::vector<net::Envelope> msgs =
                    w.has_local_work() ? transport.drain(i) : transport.drain_wait(i, 2000);
                for (const net::Envelope &env : msgs)
                    w.handle(env);
                w.step();
            }
        });
    }

    for (;;) {
        bool all_done = true;
        for (const auto &w : workers)
            all_done = all_done && w->done();
        if (all_done)
            break;
        if (elapsed_s() > config.search.time_limit_s) {
            stop.store(true);
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    stop.store(true);
    for (std::thread &t : threads)
        t.join();
    transport.shutdown();

    RunResult result;
    {
        std::lock_guard<std::mutex> lock(result_mutex);
        if (posted) {
            result.outcome = posted->outcome;
            result.plan = posted->plan;
            result.cost = posted->cost;
            result.error = posted->error;
        } else {
            result.outcome = Outcome::TIMEOUT;
        }
    }
    result.elapsed_us = static_cast<std::uint64_t>(elapsed_s() * 1e6);
    for (const auto &w : workers)
        result.agents.push_back(w->snapshot());
    return result;
}

} // namespace

RunResult solve(const model::Problem &problem, const RunConfig &config) {
    if (config.mode == RunMode::SIM)
        return run_sim(problem, config, nullptr);
    return run_threads_guarded(problem, config);
}

SimArtifacts solve_sim_logged(const model::Problem &problem, const RunConfig &config) {
    SimArtifacts artifacts;
    artifacts.result = run_sim(problem, config, &artifacts.message_log);
    return artifacts;
}

} // namespace dmaplan::engine
