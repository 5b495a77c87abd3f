#pragma once

#include "dmaplan/filter/policy.hpp"
#include "dmaplan/kernels/bitset.hpp"
#include "dmaplan/net/envelope.hpp"
#include "dmaplan/novelty/novelty_table.hpp"

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

namespace dmaplan::filter {

using kernels::Bitset;

// Heuristic ordering of withheld states: lowest goal count first, then most
// relaxed-plan facts achieved, then insertion order.
struct WithheldKey {
    int goal_count = 0;
    int relaxed_achieved = 0;

    friend bool operator<(const WithheldKey &a, const WithheldKey &b) {
        if (a.goal_count != b.goal_count)
            return a.goal_count < b.goal_count;
        return a.relaxed_achieved > b.relaxed_achieved;
    }
    friend bool operator==(const WithheldKey &a, const WithheldKey &b) {
        return a.goal_count == b.goal_count && a.relaxed_achieved == b.relaxed_achieved;
    }
};

struct OutboundState {
    net::StatePayload payload;
    Bitset projection;       // dense public indices
    std::uint64_t h_key = 0; // outgoing-table partition
    WithheldKey key;
};

enum class Decision { SENT, WITHHELD, SUPPRESSED };

// One agent's outgoing message filter: the two-phase outgoing-novelty table,
// the withheld list, and the sent-projection dedup set for the secure check.
// The caller transmits exactly the states this class hands back.
class MessageFilter {
public:
    MessageFilter(const FilterPolicy &policy, int num_public_facts);

    // Decision for a state freshly created by a public action. On SENT the
    // outgoing table is committed and the caller must transmit `state`; on
    // WITHHELD it is moved into the queue; on SUPPRESSED it is gone for good.
    Decision on_public_child(OutboundState &state);

    // True iff the release trigger fires for this agent under the current
    // status view: at least `num_waiting` agents are waiting and `who_send`
    // selects this agent.
    bool release_due(const std::vector<net::AgentStatus> &statuses, int self) const;

    // States to transmit now per num_withheld_states. Released states are
    // not re-probed, but the secure dedup still applies; every returned
    // state has been committed to the outgoing table.
    std::vector<OutboundState> release_withheld();

    // Number of withheld entries consumed by the last release_withheld()
    // call (sent + dedup-suppressed); used for progress accounting.
    std::size_t last_release_consumed() const { return last_release_consumed_; }

    std::size_t withheld_size() const { return withheld_.size(); }
    std::uint64_t withheld_peak() const { return withheld_peak_; }
    std::uint64_t suppressed_count() const { return suppressed_; }

private:
    bool secure_duplicate(const OutboundState &state) const;
    void record_sent(const OutboundState &state);

    FilterPolicy policy_;
    novelty::OutgoingNoveltyTable table_;
    std::deque<OutboundState> withheld_; // insertion order; min search by key
    std::unordered_set<std::string> sent_projections_;
    std::uint64_t withheld_peak_ = 0;
    std::uint64_t suppressed_ = 0;
    std::size_t last_release_consumed_ = 0;
};

} // namespace dmaplan::filter
