#pragma once

#include <stdexcept>
#include <string>

namespace dmaplan::filter {

enum class WOut { OFF, W1, W2 };
enum class NumWaiting { ONE, HALF, ALL };
enum class WhoSend { WAITING, NOT_WAITING, ALL };
enum class NumWithheld { NONE, ONE, GROUP, ALL };
enum class OutgoingH { NONE, GOALS_RELAXED };

// Outgoing-filter configuration. Defaults are the reference configuration:
// num_waiting=half, who_send=all, num_withheld=group, w_out=1, with the
// outgoing table partitioned by the same (goal count, relaxed-plan count)
// pair that guides the search.
struct FilterPolicy {
    WOut w_out = WOut::W1;
    NumWaiting num_waiting = NumWaiting::HALF;
    WhoSend who_send = WhoSend::ALL;
    NumWithheld num_withheld = NumWithheld::GROUP;
    bool secure_check = false;
    OutgoingH outgoing_h = OutgoingH::GOALS_RELAXED;
};

// Strong-privacy operating mode: no heuristic partitions in the outgoing
// filter, nothing withheld (filtered states are dropped), and the search
// guided by public-projection novelty with depth tie-breaking.
inline FilterPolicy strong_privacy_policy(WOut w_out = WOut::W1, bool secure_check = false) {
    FilterPolicy p;
    p.w_out = w_out == WOut::OFF ? WOut::W1 : w_out;
    p.num_withheld = NumWithheld::NONE;
    p.outgoing_h = OutgoingH::NONE;
    p.secure_check = secure_check;
    return p;
}

inline int waiting_threshold(NumWaiting nw, int num_agents) {
    switch (nw) {
    case NumWaiting::ONE: return 1;
    case NumWaiting::HALF: return (num_agents + 1) / 2;
    case NumWaiting::ALL: return num_agents;
    }
    return num_agents;
}

inline int outgoing_cap(WOut w) {
    switch (w) {
    case WOut::W1: return 1;
    case WOut::W2: return 2;
    case WOut::OFF: return 0;
    }
    return 0;
}

} // namespace dmaplan::filter
