#include "dmaplan/net/sim_transport.hpp"

namespace dmaplan::net {

SimTransport::SimTransport(int num_agents, const DelayModel &delay, std::uint64_t seed,
                           bool keep_log)
    : n_(num_agents),
      delay_(delay),
      rng_(util::derive_seed(seed, 0xde1a7u)),
      send_seq_(static_cast<std::size_t>(num_agents), 0),
      channel_floor_us_(static_cast<std::size_t>(num_agents),
                        std::vector<std::uint64_t>(static_cast<std::size_t>(num_agents), 0)),
      inbox_(static_cast<std::size_t>(num_agents)),
      keep_log_(keep_log) {
    validate(delay);
}

void SimTransport::enqueue(int sender, int recipient, MsgKind kind, const Payload &payload,
                           std::uint64_t seq) {
    Envelope env;
    env.kind = kind;
    env.sender = sender;
    env.recipient = recipient;
    env.seq = seq;
    env.enqueue_us = now_us_;
    std::uint64_t due = now_us_ + sample_delay_us(delay_, rng_);
    // Per-channel FIFO: delivery order equals enqueue order.
    std::uint64_t &floor = channel_floor_us_[static_cast<std::size_t>(sender)]
                                            [static_cast<std::size_t>(recipient)];
    due = std::max(due, floor);
    floor = due;
    env.deliver_us = due;
    env.payload = payload;
    ++counters_.sent;
    if (keep_log_)
        log_.push_back(env);
    inbox_[static_cast<std::size_t>(recipient)].push(Pending{due, order_counter_++, std::move(env)});
}

std::uint64_t SimTransport::broadcast(int sender, MsgKind kind, Payload payload) {
    std::uint64_t seq = send_seq_[static_cast<std::size_t>(sender)]++;
    for (int r = 0; r < n_; ++r)
        if (r != sender)
            enqueue(sender, r, kind, payload, seq);
    return seq;
}

std::uint64_t SimTransport::unicast(int sender, int recipient, MsgKind kind, Payload payload) {
    std::uint64_t seq = send_seq_[static_cast<std::size_t>(sender)]++;
    enqueue(sender, recipient, kind, payload, seq);
    return seq;
}

std::vector<Envelope> SimTransport::drain(int agent) {
    auto &q = inbox_[static_cast<std::size_t>(agent)];
    std::vector<Envelope> out;
    while (!q.empty() && q.top().deliver_us <= recipient_clock_us_) {
        out.push_back(q.top().env);
        q.pop();
        ++counters_.delivered;
    }
    return out;
}

std::uint64_t SimTransport::next_delivery_us(int agent) const {
    const auto &q = inbox_[static_cast<std::size_t>(agent)];
    return q.empty() ? UINT64_MAX : q.top().deliver_us;
}

bool SimTransport::has_pending(int agent) const {
    return !inbox_[static_cast<std::size_t>(agent)].empty();
}

} // namespace dmaplan::net
