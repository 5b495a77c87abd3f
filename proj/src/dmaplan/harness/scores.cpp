#include "dmaplan/harness/scores.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmaplan::harness {

ScoreTable ipc_scores(const std::vector<std::pair<std::string, ConfigResults>> &configs) {
    if (configs.size() < 2)
        throw std::invalid_argument("ipc_scores: at least two configurations required");

    ScoreTable table;
    for (const auto &[name, results] : configs)
        table.configs.push_back(name);

    // shared problem set
    for (const auto &[problem, entry] : configs[0].second) {
        bool everywhere = true;
        for (std::size_t c = 1; c < configs.size(); ++c)
            if (!configs[c].second.count(problem))
                everywhere = false;
        if (everywhere)
            table.problems.push_back(problem);
    }
    if (table.problems.empty())
        throw std::invalid_argument("ipc_scores: configurations share no problems");

    const std::size_t k = configs.size();
    table.quality_total.assign(k, 0.0);
    table.time_total.assign(k, 0.0);
    table.quality.assign(k, {});
    table.time.assign(k, {});
    table.avg_time_s.assign(k, 0.0);
    table.avg_cost.assign(k, 0.0);

    for (const std::string &problem : table.problems) {
        double best_cost = std::numeric_limits<double>::infinity();
        double best_time = std::numeric_limits<double>::infinity();
        bool anyone = false;
        bool everyone = true;
        for (std::size_t c = 0; c < k; ++c) {
            const ScoreEntry &e = configs[c].second.at(problem);
            if (!e.solved) {
                everyone = false;
                continue;
            }
            anyone = true;
            best_cost = std::min(best_cost, e.cost);
            best_time = std::min(best_time, e.time_s);
        }
        for (std::size_t c = 0; c < k; ++c) {
            const ScoreEntry &e = configs[c].second.at(problem);
            double q = 0.0, t = 0.0;
            if (e.solved && anyone) {
                q = e.cost <= 0.0 ? 1.0 : best_cost / e.cost;
                if (e.time_s <= std::max(best_time, 1.0))
                    t = 1.0;
                else
                    t = 1.0 / (1.0 + std::log10(e.time_s / std::max(best_time, 1e-9)));
            }
            table.quality[c][problem] = q;
            table.time[c][problem] = t;
            table.quality_total[c] += q;
            table.time_total[c] += t;
        }
        if (everyone) {
            ++table.shared_solved;
            for (std::size_t c = 0; c < k; ++c) {
                const ScoreEntry &e = configs[c].second.at(problem);
                table.avg_time_s[c] += e.time_s;
                table.avg_cost[c] += e.cost;
            }
        }
    }
    if (table.shared_solved > 0) {
        for (std::size_t c = 0; c < k; ++c) {
            table.avg_time_s[c] /= table.shared_solved;
            table.avg_cost[c] /= table.shared_solved;
        }
    }
    return table;
}

} // namespace dmaplan::harness
