#pragma once

#include "dmaplan/engine/search_types.hpp"
#include "dmaplan/filter/filter.hpp"
#include "dmaplan/heuristics/relaxed_plan.hpp"
#include "dmaplan/model/state.hpp"
#include "dmaplan/net/crypto.hpp"
#include "dmaplan/net/transport.hpp"
#include "dmaplan/novelty/novelty_table.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace dmaplan::engine {

using kernels::Bitset;

// Shared sink for the run outcome; the first post wins. The driver guards
// concurrency in threaded mode.
struct ResultSink {
    std::function<void(Outcome, const model::Plan &, double cost, const std::string &err)> post;
};

// One agent's search worker: open/closed lists over its private view,
// expansion with its own actions only, message ingestion, the outgoing
// filter, status/termination bookkeeping, and distributed plan tracing.
//
// Single-threaded by construction; the driver feeds inbound envelopes via
// handle() and advances the search via step(). Both drivers (virtual-time
// simulation and threaded sockets) run the same code.
class AgentWorker {
public:
    using Envelope = net::Envelope;

    AgentWorker(const model::Problem &problem, int agent, const SearchConfig &config,
                net::Transport &transport, std::uint64_t run_seed, ResultSink sink);

    void handle(const Envelope &envelope);
    // One unit of local work. Returns true if anything happened; false means
    // the agent is idle until a message arrives.
    bool step();

    bool done() const { return mode_ == Mode::DONE; }
    bool has_local_work() const;
    net::AgentStatus status() const { return statuses_[static_cast<std::size_t>(agent_)]; }
    AgentStats snapshot() const;
    std::uint64_t states_sent() const { return states_sent_; }
    std::uint64_t states_received() const { return states_received_; }
    std::size_t withheld_size() const { return filter_.withheld_size(); }

private:
    enum class Mode { RUNNING, TRACING, DONE };

    struct RemoteRef {
        int sender = -1;
        std::uint64_t ref = 0;
        bool valid() const { return sender >= 0; }
    };

    struct Node {
        model::State state;
        double g = 0.0;
        heuristics::PathCounters counters;
        int goal_count = 0;
        int novelty = 0;
        int parent = -1; // node id; -1 root; ignored when remote.valid()
        RemoteRef remote;
        int action = -1; // creating action index, -1 for root/received
        bool closed = false;
        bool transmitted = false;
    };

    struct OpenEntry {
        std::int64_t k0, k1, k2; // (novelty, then mode-dependent tie keys)
        std::uint64_t seq;
        int node = -1;
        double g_at_push = 0.0;
        friend bool operator>(const OpenEntry &a, const OpenEntry &b) {
            if (a.k0 != b.k0) return a.k0 > b.k0;
            if (a.k1 != b.k1) return a.k1 > b.k1;
            if (a.k2 != b.k2) return a.k2 > b.k2;
            return a.seq > b.seq;
        }
    };

    // --- evaluation -------------------------------------------------------
    std::vector<std::uint32_t> search_atoms(const model::State &state);
    std::uint64_t search_partition_key(int goal_count_full, int goal_count_public,
                                       int relaxed_achieved) const;
    void push_open(int node_id);
    int make_node(model::State &&state, double g, heuristics::PathCounters &&counters,
                  int parent, RemoteRef remote, int action);
    // Returns the node id, or -1 when the state was a duplicate.
    int insert_or_update(model::State &&state, double g, int parent, RemoteRef remote, int action,
                         std::optional<int> received_depth, bool *reopened);
    int pop_best(); // -1 when open is effectively empty

    // --- messaging --------------------------------------------------------
    void offer_to_filter(int node_id);
    void transmit_state(filter::OutboundState &&out, int node_id);
    net::StatePayload build_payload(const Node &node, int node_id);
    void ingest_state_message(const Envelope &envelope);
    void broadcast_status(bool force);
    void evaluate_release();
    net::AgentStatus compute_status();

    // refs are node ids and fit in 32 bits
    static std::uint64_t trace_key(int sender, std::uint64_t ref) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(sender)) << 32) | ref;
    }

    // --- termination & tracing --------------------------------------------
    void maybe_conclude();
    void start_probe_round();
    void begin_trace(int goal_node);
    void serve_trace_request(const Envelope &envelope);
    void finish_trace(const model::Plan &prefix);
    void finish_solved(model::Plan plan, double cost);
    void fail(const std::string &message);
    // Own actions from `node` back to the root or a remote link, in forward
    // order; sets `remote` when the chain crosses to another agent.
    model::Plan local_segment(int node_id, RemoteRef *remote) const;

    const model::Problem &problem_;
    int agent_;
    int n_;
    SearchConfig config_;
    net::Transport &transport_;
    ResultSink sink_;

    net::AgentKey key_;
    heuristics::RelaxedPlanSet relaxed_;
    std::vector<int> relaxed_public_dense_; // dense R indices that are public facts

    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, std::vector<int>> index_; // state hash -> node ids
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open_;
    std::uint64_t open_seq_ = 0;

    novelty::SearchNoveltyTable search_table_;
    // (slot, token hi, token lo) -> interned atom id
    std::map<std::tuple<int, std::uint64_t, std::uint64_t>, std::uint32_t> token_atoms_;
    std::size_t atom_universe_;

    filter::MessageFilter filter_;

    // token <-> private part dictionaries
    std::unordered_map<std::string, model::Token> token_by_private_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Bitset> private_by_token_;

    std::vector<net::AgentStatus> statuses_;
    net::AgentStatus last_broadcast_status_ = net::AgentStatus::ACTIVE;
    bool saw_state_since_broadcast_ = false;
    bool in_release_ = false;

    std::uint64_t states_sent_ = 0;     // per-recipient conservation counter
    std::uint64_t states_received_ = 0;

    // written only by the owning worker; read cross-thread via done()
    std::atomic<Mode> mode_{Mode::RUNNING};

    // tracing
    double trace_goal_cost_ = 0.0;
    model::Plan trace_suffix_;
    struct PendingTrace {
        int requester; // -1: this agent's own goal trace
        std::uint64_t their_ref;
        model::Plan suffix;
    };
    // keyed by trace_key(upstream sender, upstream ref)
    std::unordered_map<std::uint64_t, std::vector<PendingTrace>> pending_traces_;

    // coordinator (agent 0) termination detection
    struct ProbeRound {
        std::int64_t round = -1;
        int acks = 0;
        bool consistent = true;
        std::uint64_t sum_sent = 0;
        std::uint64_t sum_received = 0;
        bool all_empty = true;
        bool any_partial_unreleasable = false;
    };
    std::int64_t probe_counter_ = 0;
    ProbeRound current_round_;
    bool have_prev_round_ = false;
    std::uint64_t prev_round_sum_sent_ = 0;

    AgentStats stats_;
};

} // namespace dmaplan::engine
