#include "dmaplan/engine/agent.hpp"

#include <algorithm>

namespace dmaplan::engine {

using net::AgentStatus;
using net::Envelope;
using net::MsgKind;

namespace {
constexpr double kGEps = 1e-9;
}

const char *to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::SOLVED: return "SOLVED";
    case Outcome::EXHAUSTED: return "EXHAUSTED";
    case Outcome::TIMEOUT: return "TIMEOUT";
    case Outcome::ERROR: return "ERROR";
    }
    return "?";
}

AgentWorker::AgentWorker(const model::Problem &problem, int agent, const SearchConfig &config,
                         net::Transport &transport, std::uint64_t run_seed, ResultSink sink)
    : problem_(problem),
      agent_(agent),
      n_(problem.num_agents()),
      config_(config),
      transport_(transport),
      sink_(std::move(sink)),
      key_(net::derive_agent_key(run_seed, agent)),
      relaxed_(heuristics::extract_relaxed_plan(problem, agent)),
      search_table_(config.search_novelty_cap,
                    config.strong_privacy ? static_cast<std::size_t>(problem.num_public_facts())
                                          : static_cast<std::size_t>(problem.num_facts())),
      atom_universe_(config.strong_privacy ? static_cast<std::size_t>(problem.num_public_facts())
                                           : static_cast<std::size_t>(problem.num_facts())),
      filter_(config.policy, problem.num_public_facts()),
      statuses_(static_cast<std::size_t>(problem.num_agents()), AgentStatus::ACTIVE) {
    for (std::size_t i = 0; i < relaxed_.fact_ids.size(); ++i)
        if (problem_.facts[static_cast<std::size_t>(relaxed_.fact_ids[i])].is_public())
            relaxed_public_dense_.push_back(static_cast<int>(i));

    // The zero token stands for this agent's private part of I.
    model::State root = model::initial_state(problem_, agent_);
    Bitset own_init_private = root.local;
    own_init_private.andnot_assign(problem_.public_mask);
    private_by_token_.emplace(std::make_pair(std::uint64_t(0), std::uint64_t(0)), own_init_private);

    heuristics::PathCounters counters = heuristics::initial_counters(relaxed_, root);
    int gc_full = heuristics::goal_count(problem_, agent_, root, heuristics::GoalView::FULL);
    int gc_pub = heuristics::goal_count(problem_, agent_, root, heuristics::GoalView::PUBLIC_ONLY);
    std::vector<std::uint32_t> atoms = search_atoms(root);
    int nov = search_table_.evaluate_and_insert(
        atoms, search_partition_key(gc_full, gc_pub, counters.achieved_count));

    Node node;
    node.state = std::move(root);
    node.g = 0.0;
    node.counters = std::move(counters);
    node.goal_count = gc_full;
    node.novelty = nov;
    nodes_.push_back(std::move(node));
    index_[nodes_[0].state.hash()].push_back(0);
    push_open(0);
}

// --------------------------------------------------------------- evaluation

std::vector<std::uint32_t> AgentWorker::search_atoms(const model::State &state) {
    std::vector<std::uint32_t> atoms;
    if (config_.strong_privacy) {
        for (int i = 0; i < problem_.num_public_facts(); ++i)
            if (state.local.test(static_cast<std::size_t>(problem_.public_fact_ids[i])))
                atoms.push_back(static_cast<std::uint32_t>(i));
        return atoms;
    }
    atoms = state.local.set_bits();
    for (int j = 0; j < n_; ++j) {
        if (j == agent_)
            continue;
        const model::Token &t = state.foreign[static_cast<std::size_t>(j)];
        auto key = std::make_tuple(j, t.hi, t.lo);
        auto it = token_atoms_.find(key);
        std::uint32_t id;
        if (it == token_atoms_.end()) {
            id = static_cast<std::uint32_t>(atom_universe_++);
            search_table_.grow_universe(atom_universe_);
            token_atoms_.emplace(key, id);
        } else {
            id = it->second;
        }
        atoms.push_back(id);
    }
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

std::uint64_t AgentWorker::search_partition_key(int goal_count_full, int goal_count_public,
                                                int relaxed_achieved) const {
    if (config_.strong_privacy)
        return static_cast<std::uint64_t>(goal_count_public);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(goal_count_full)) << 32) |
           static_cast<std::uint32_t>(relaxed_achieved);
}

void AgentWorker::push_open(int node_id) {
    const Node &node = nodes_[static_cast<std::size_t>(node_id)];
    OpenEntry e;
    e.k0 = node.novelty;
    if (config_.strong_privacy) {
        e.k1 = node.counters.depth;
        e.k2 = 0;
    } else {
        e.k1 = node.goal_count;
        e.k2 = -node.counters.achieved_count;
    }
    e.seq = open_seq_++;
    e.node = node_id;
    e.g_at_push = node.g;
    open_.push(e);
}

int AgentWorker::make_node(model::State &&state, double g, heuristics::PathCounters &&counters,
                           int parent, RemoteRef remote, int action) {
    Node node;
    node.state = std::move(state);
    node.g = g;
    node.counters = std::move(counters);
    node.parent = parent;
    node.remote = remote;
    node.action = action;
    int id = static_cast<int>(nodes_.size());
    std::uint64_t h = node.state.hash();
    nodes_.push_back(std::move(node));
    index_[h].push_back(id);
    return id;
}

int AgentWorker::insert_or_update(model::State &&state, double g, int parent, RemoteRef remote,
                                  int action, std::optional<int> received_depth, bool *reopened) {
    *reopened = false;
    std::uint64_t h = state.hash();
    auto bucket = index_.find(h);
    if (bucket != index_.end()) {
        for (int id : bucket->second) {
            Node &existing = nodes_[static_cast<std::size_t>(id)];
            if (!(existing.state == state))
                continue;
            if (g < existing.g - kGEps) {
                existing.g = g;
                existing.parent = parent;
                existing.remote = remote;
                existing.action = action;
                if (received_depth)
                    existing.counters =
                        heuristics::counters_for_received(relaxed_, existing.state, *received_depth);
                else
                    existing.counters = heuristics::update_counters(
                        nodes_[static_cast<std::size_t>(parent)].counters, existing.state, relaxed_);
                existing.closed = false;
                ++stats_.reopened;
                *reopened = true;
                push_open(id);
                return id;
            }
            ++stats_.duplicates;
            return -1;
        }
    }

    heuristics::PathCounters counters =
        received_depth
            ? heuristics::counters_for_received(relaxed_, state, *received_depth)
            : (parent >= 0 ? heuristics::update_counters(
                                 nodes_[static_cast<std::size_t>(parent)].counters, state, relaxed_)
                           : heuristics::initial_counters(relaxed_, state));
    int gc_full = heuristics::goal_count(problem_, agent_, state, heuristics::GoalView::FULL);
    int gc_pub = heuristics::goal_count(problem_, agent_, state, heuristics::GoalView::PUBLIC_ONLY);
    std::vector<std::uint32_t> atoms = search_atoms(state);
    int nov = search_table_.evaluate_and_insert(
        atoms, search_partition_key(gc_full, gc_pub, counters.achieved_count));

    int id = make_node(std::move(state), g, std::move(counters), parent, remote, action);
    Node &node = nodes_[static_cast<std::size_t>(id)];
    node.goal_count = gc_full;
    node.novelty = nov;
    push_open(id);
    return id;
}

int AgentWorker::pop_best() {
    while (!open_.empty()) {
        OpenEntry e = open_.top();
        const Node &node = nodes_[static_cast<std::size_t>(e.node)];
        if (node.closed || node.g != e.g_at_push) {
            open_.pop();
            continue;
        }
        open_.pop();
        return e.node;
    }
    return -1;
}

// ---------------------------------------------------------------- messaging

net::StatePayload AgentWorker::build_payload(const Node &node, int node_id) {
    net::StatePayload p;
    p.public_bytes = model::public_projection(problem_, node.state).to_bytes();
    p.tokens.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j)
        p.tokens[static_cast<std::size_t>(j)] = node.state.foreign[static_cast<std::size_t>(j)];

    std::string own_bytes = net::private_part_bytes(problem_, agent_, node.state);
    auto memo = token_by_private_.find(own_bytes);
    model::Token own;
    if (memo == token_by_private_.end()) {
        own = net::keyed_digest(key_, own_bytes);
        token_by_private_.emplace(own_bytes, own);
        Bitset own_private = node.state.local;
        own_private.andnot_assign(problem_.public_mask);
        private_by_token_.emplace(std::make_pair(own.hi, own.lo), own_private);
    } else {
        own = memo->second;
    }
    p.tokens[static_cast<std::size_t>(agent_)] = own;
    p.private_goal_flags = node.state.private_goal_flags;
    p.g = node.g;
    p.depth = node.counters.depth;
    p.parent_ref = static_cast<std::uint64_t>(node_id);
    return p;
}

void AgentWorker::offer_to_filter(int node_id) {
    const Node &node = nodes_[static_cast<std::size_t>(node_id)];
    filter::OutboundState out;
    out.payload = build_payload(node, node_id);
    out.projection = model::public_projection(problem_, node.state).facts;

    if (config_.policy.outgoing_h == filter::OutgoingH::GOALS_RELAXED) {
        int gc_pub =
            heuristics::goal_count(problem_, agent_, node.state, heuristics::GoalView::PUBLIC_ONLY);
        int r_pub = 0;
        for (int dense : relaxed_public_dense_)
            if (node.counters.achieved.test(static_cast<std::size_t>(dense)))
                ++r_pub;
        out.h_key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(gc_pub)) << 32) |
                    static_cast<std::uint32_t>(r_pub);
    }
    out.key = filter::WithheldKey{node.goal_count, node.counters.achieved_count};

    filter::Decision decision = filter_.on_public_child(out);
    if (decision == filter::Decision::SENT)
        transmit_state(std::move(out), node_id);
}

void AgentWorker::transmit_state(filter::OutboundState &&out, int node_id) {
    nodes_[static_cast<std::size_t>(node_id)].transmitted = true;
    stats_.sent_projections.push_back(out.payload.public_bytes);
    transport_.broadcast(agent_, MsgKind::STATE, std::move(out.payload));
    std::uint64_t copies = static_cast<std::uint64_t>(n_ - 1);
    states_sent_ += copies;
    stats_.state_messages_sent += copies;
}

void AgentWorker::ingest_state_message(const Envelope &envelope) {
    const auto &p = std::get<net::StatePayload>(envelope.payload);
    const std::size_t npub_bytes = (static_cast<std::size_t>(problem_.num_public_facts()) + 7) / 8;
    if (p.tokens.size() != static_cast<std::size_t>(n_) ||
        p.private_goal_flags.size() != static_cast<std::size_t>(n_) ||
        p.public_bytes.size() != npub_bytes) {
        ++stats_.malformed_dropped;
        return;
    }
    ++states_received_;
    ++stats_.state_messages_received;
    saw_state_since_broadcast_ = true;

    const model::Token &own_token = p.tokens[static_cast<std::size_t>(agent_)];
    auto priv = private_by_token_.find(std::make_pair(own_token.hi, own_token.lo));
    if (priv == private_by_token_.end()) {
        // A token for our own private part that we never produced.
        ++stats_.malformed_dropped;
        return;
    }

    model::State state;
    state.local = Bitset(static_cast<std::size_t>(problem_.num_facts()));
    Bitset proj = Bitset::from_bytes(p.public_bytes,
                                     static_cast<std::size_t>(problem_.num_public_facts()));
    proj.for_each_set([&](std::size_t i) {
        state.local.set(static_cast<std::size_t>(problem_.public_fact_ids[i]));
    });
    state.local.or_assign(priv->second);
    state.foreign = p.tokens;
    state.foreign[static_cast<std::size_t>(agent_)] = model::Token{};
    state.private_goal_flags = p.private_goal_flags;
    state.private_goal_flags[static_cast<std::size_t>(agent_)] =
        problem_.private_goal_bits[agent_].is_subset_of(state.local) ? 1 : 0;

    bool reopened = false;
    insert_or_update(std::move(state), p.g, -1, RemoteRef{envelope.sender, p.parent_ref}, -1,
                     p.depth, &reopened);
}

net::AgentStatus AgentWorker::compute_status() {
    if (mode_ != Mode::RUNNING)
        return AgentStatus::ACTIVE;
    // Discard stale open entries so emptiness is accurate.
    while (!open_.empty()) {
        const OpenEntry &e = open_.top();
        const Node &node = nodes_[static_cast<std::size_t>(e.node)];
        if (node.closed || node.g != e.g_at_push) {
            open_.pop();
            continue;
        }
        return AgentStatus::ACTIVE;
    }
    return filter_.withheld_size() > 0 ? AgentStatus::PARTIALLY_EMPTY : AgentStatus::EMPTY;
}

void AgentWorker::broadcast_status(bool force) {
    AgentStatus s = compute_status();
    bool keepalive = saw_state_since_broadcast_ && net::is_waiting(s);
    if (!force && s == last_broadcast_status_ && !keepalive)
        return;
    last_broadcast_status_ = s;
    statuses_[static_cast<std::size_t>(agent_)] = s;
    saw_state_since_broadcast_ = false;

    net::StatusPayload payload;
    payload.status = s;
    payload.withheld_count = filter_.withheld_size();
    payload.states_sent = states_sent_;
    payload.states_received = states_received_;
    transport_.broadcast(agent_, MsgKind::STATUS, payload);

    evaluate_release();
    maybe_conclude();
}

void AgentWorker::evaluate_release() {
    // One release per status event: the broadcast that announces a release
    // must not recursively trigger the next one, or num_withheld=1 would
    // drain in a single burst instead of pacing on status round-trips.
    if (mode_ != Mode::RUNNING || in_release_)
        return;
    if (!filter_.release_due(statuses_, agent_))
        return;
    in_release_ = true;
    std::vector<filter::OutboundState> out = filter_.release_withheld();
    for (filter::OutboundState &o : out) {
        int node_id = static_cast<int>(o.payload.parent_ref);
        ++stats_.released;
        transmit_state(std::move(o), node_id);
    }
    if (filter_.last_release_consumed() > 0) {
        // Progress signal: peers re-evaluate their triggers on this
        // broadcast even if our status value did not change.
        broadcast_status(true);
    }
    in_release_ = false;
}

// ------------------------------------------------------- handle & stepping

void AgentWorker::handle(const Envelope &envelope) {
    if (mode_ == Mode::DONE)
        return;
    switch (envelope.kind) {
    case MsgKind::STATE:
        ingest_state_message(envelope);
        break;
    case MsgKind::STATUS: {
        const auto &p = std::get<net::StatusPayload>(envelope.payload);
        statuses_[static_cast<std::size_t>(envelope.sender)] = p.status;
        if (p.probe_round >= 0) {
            net::StatusPayload ack;
            ack.status = compute_status();
            ack.withheld_count = filter_.withheld_size();
            ack.states_sent = states_sent_;
            ack.states_received = states_received_;
            ack.ack_round = p.probe_round;
            transport_.unicast(agent_, envelope.sender, MsgKind::STATUS, ack);
        }
        if (p.ack_round >= 0 && agent_ == 0 && p.ack_round == current_round_.round) {
            current_round_.acks += 1;
            current_round_.sum_sent += p.states_sent;
            current_round_.sum_received += p.states_received;
            current_round_.consistent =
                current_round_.consistent && net::is_waiting(p.status);
            current_round_.all_empty = current_round_.all_empty && p.status == AgentStatus::EMPTY;
            current_round_.any_partial_unreleasable =
                current_round_.any_partial_unreleasable ||
                p.status == AgentStatus::PARTIALLY_EMPTY;
            if (current_round_.acks == n_ - 1)
                maybe_conclude();
        }
        evaluate_release();
        maybe_conclude();
        break;
    }
    case MsgKind::TERMINATE: {
        const auto &p = std::get<net::TerminatePayload>(envelope.payload);
        sink_.post(p.solved ? Outcome::SOLVED : Outcome::EXHAUSTED, p.plan, p.cost, "");
        mode_ = Mode::DONE;
        break;
    }
    case MsgKind::TRACE_REQ:
        serve_trace_request(envelope);
        break;
    case MsgKind::TRACE_REP: {
        const auto &p = std::get<net::TraceRepPayload>(envelope.payload);
        auto it = pending_traces_.find(trace_key(envelope.sender, p.msg_seq));
        if (it == pending_traces_.end())
            break;
        std::vector<PendingTrace> pendings = std::move(it->second);
        pending_traces_.erase(it);
        for (PendingTrace &pending : pendings) {
            model::Plan full = p.prefix;
            full.insert(full.end(), pending.suffix.begin(), pending.suffix.end());
            if (pending.requester < 0) {
                finish_solved(std::move(full), trace_goal_cost_);
            } else {
                net::TraceRepPayload rep;
                rep.msg_seq = pending.their_ref;
                rep.prefix = std::move(full);
                transport_.unicast(agent_, pending.requester, MsgKind::TRACE_REP, rep);
            }
        }
        break;
    }
    }
}

bool AgentWorker::step() {
    if (mode_ == Mode::DONE)
        return false;
    bool did = false;
    if (mode_ == Mode::RUNNING) {
        int id = pop_best();
        if (id >= 0) {
            did = true;
            if (model::is_global_goal(problem_, agent_, nodes_[static_cast<std::size_t>(id)].state)) {
                begin_trace(id);
            } else {
                // expand with own actions only
                Node &node = nodes_[static_cast<std::size_t>(id)];
                node.closed = true;
                ++stats_.expanded;
                const model::State parent_state = node.state; // nodes_ may reallocate
                const double parent_g = node.g;
                for (int ai : problem_.actions_of[agent_]) {
                    const model::Action &action = problem_.actions[static_cast<std::size_t>(ai)];
                    if (!model::applicable(problem_, action, parent_state))
                        continue;
                    model::State child = model::apply(problem_, agent_, action, parent_state);
                    ++stats_.generated;
                    bool reopened = false;
                    int child_id = insert_or_update(std::move(child), parent_g + action.cost, id,
                                                    RemoteRef{}, ai, std::nullopt, &reopened);
                    if (child_id >= 0 && !reopened && !action.is_private)
                        offer_to_filter(child_id);
                }
            }
        }
    }
    AgentStatus before = last_broadcast_status_;
    broadcast_status(false);
    if (last_broadcast_status_ != before)
        did = true;
    return did;
}

bool AgentWorker::has_local_work() const {
    if (mode_ != Mode::RUNNING)
        return false;
    if (!open_.empty())
        return true; // possibly stale entries; step() will clean them
    AgentStatus s = filter_.withheld_size() > 0 ? AgentStatus::PARTIALLY_EMPTY
                                                : AgentStatus::EMPTY;
    bool keepalive = saw_state_since_broadcast_ && net::is_waiting(s);
    return s != last_broadcast_status_ || keepalive;
}

// -------------------------------------------------- termination and traces

void AgentWorker::maybe_conclude() {
    if (agent_ != 0 || mode_ == Mode::DONE)
        return;
    statuses_[0] = compute_status();
    bool all_waiting = true, all_empty = true, any_partial = false;
    for (AgentStatus s : statuses_) {
        all_waiting = all_waiting && net::is_waiting(s);
        all_empty = all_empty && s == AgentStatus::EMPTY;
        any_partial = any_partial || s == AgentStatus::PARTIALLY_EMPTY;
    }
    // A partially-empty configuration can only drain if someone may release;
    // with who_send=notwaiting and everyone waiting, nobody ever will.
    bool dead_release =
        any_partial && config_.policy.who_send == filter::WhoSend::NOT_WAITING && all_waiting;
    if (!(all_empty || dead_release)) {
        current_round_.round = -1;
        have_prev_round_ = false;
        return;
    }

    if (current_round_.round >= 0) {
        if (current_round_.acks < n_ - 1)
            return; // probe still collecting
        // Round complete: judge it.
        ProbeRound round = current_round_;
        current_round_.round = -1;
        bool round_dead_release = round.any_partial_unreleasable &&
                                  config_.policy.who_send == filter::WhoSend::NOT_WAITING;
        bool success = round.consistent && (round.all_empty || round_dead_release) &&
                       round.sum_sent == round.sum_received;
        if (!success) {
            have_prev_round_ = false;
            return;
        }
        if (have_prev_round_ && prev_round_sum_sent_ == round.sum_sent) {
            net::TerminatePayload done;
            done.solved = false;
            transport_.broadcast(agent_, MsgKind::TERMINATE, done);
            sink_.post(Outcome::EXHAUSTED, {}, 0.0, "");
            mode_ = Mode::DONE;
            return;
        }
        have_prev_round_ = true;
        prev_round_sum_sent_ = round.sum_sent;
    }
    start_probe_round();
}

void AgentWorker::start_probe_round() {
    current_round_ = ProbeRound{};
    current_round_.round = probe_counter_++;
    AgentStatus own = compute_status();
    current_round_.consistent = net::is_waiting(own);
    current_round_.all_empty = own == AgentStatus::EMPTY;
    current_round_.any_partial_unreleasable = own == AgentStatus::PARTIALLY_EMPTY;
    current_round_.sum_sent = states_sent_;
    current_round_.sum_received = states_received_;
    current_round_.acks = 0;

    if (n_ == 1) {
        maybe_conclude();
        return;
    }
    net::StatusPayload probe;
    probe.status = own;
    probe.withheld_count = filter_.withheld_size();
    probe.states_sent = states_sent_;
    probe.states_received = states_received_;
    probe.probe_round = current_round_.round;
    transport_.broadcast(agent_, MsgKind::STATUS, probe);
}

model::Plan AgentWorker::local_segment(int node_id, RemoteRef *remote) const {
    *remote = RemoteRef{};
    model::Plan reversed;
    int cur = node_id;
    while (cur >= 0) {
        const Node &node = nodes_[static_cast<std::size_t>(cur)];
        if (node.remote.valid()) {
            *remote = node.remote;
            break;
        }
        if (node.action < 0)
            break; // root
        reversed.push_back(
            {agent_, problem_.actions[static_cast<std::size_t>(node.action)].name});
        cur = node.parent;
    }
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

void AgentWorker::begin_trace(int goal_node) {
    mode_ = Mode::TRACING;
    trace_goal_cost_ = nodes_[static_cast<std::size_t>(goal_node)].g;
    RemoteRef remote;
    trace_suffix_ = local_segment(goal_node, &remote);
    if (!remote.valid()) {
        finish_solved(trace_suffix_, trace_goal_cost_);
        return;
    }
    std::uint64_t key = trace_key(remote.sender, remote.ref);
    bool first = pending_traces_.find(key) == pending_traces_.end();
    pending_traces_[key].push_back(PendingTrace{-1, 0, trace_suffix_});
    if (first)
        transport_.unicast(agent_, remote.sender, MsgKind::TRACE_REQ,
                           net::TraceReqPayload{remote.ref});
}

void AgentWorker::serve_trace_request(const Envelope &envelope) {
    const auto &p = std::get<net::TraceReqPayload>(envelope.payload);
    if (p.msg_seq >= nodes_.size() ||
        !nodes_[static_cast<std::size_t>(p.msg_seq)].transmitted) {
        fail("trace request for unknown message id " + std::to_string(p.msg_seq));
        return;
    }
    int node_id = static_cast<int>(p.msg_seq);
    RemoteRef remote;
    model::Plan segment = local_segment(node_id, &remote);
    if (!remote.valid()) {
        net::TraceRepPayload rep;
        rep.msg_seq = p.msg_seq;
        rep.prefix = std::move(segment);
        transport_.unicast(agent_, envelope.sender, MsgKind::TRACE_REP, rep);
        return;
    }
    std::uint64_t key = trace_key(remote.sender, remote.ref);
    bool first = pending_traces_.find(key) == pending_traces_.end();
    pending_traces_[key].push_back(PendingTrace{envelope.sender, p.msg_seq, std::move(segment)});
    if (first)
        transport_.unicast(agent_, remote.sender, MsgKind::TRACE_REQ,
                           net::TraceReqPayload{remote.ref});
}

void AgentWorker::finish_solved(model::Plan plan, double cost) {
    if (mode_ == Mode::DONE)
        return;
    net::TerminatePayload done;
    done.solved = true;
    done.plan = plan;
    done.cost = cost;
    transport_.broadcast(agent_, MsgKind::TERMINATE, done);
    sink_.post(Outcome::SOLVED, plan, cost, "");
    mode_ = Mode::DONE;
}

void AgentWorker::fail(const std::string &message) {
    sink_.post(Outcome::ERROR, {}, 0.0, message);
    mode_ = Mode::DONE;
}

AgentStats AgentWorker::snapshot() const {
    AgentStats s = stats_;
    s.withheld_peak = filter_.withheld_peak();
    s.withheld_final = filter_.withheld_size();
    s.suppressed = filter_.suppressed_count();
    return s;
}

} // namespace dmaplan::engine
