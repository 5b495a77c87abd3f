#pragma once

#include "dmaplan/net/delay.hpp"
#include "dmaplan/net/transport.hpp"
#include "dmaplan/util/rng.hpp"

#include <map>
#include <queue>

namespace dmaplan::net {

// Single-threaded virtual-time transport. Each envelope is stamped with a
// delivery time = enqueue + gamma delay, clamped so delivery order within
// one sender-receiver channel equals enqueue order. drain(agent) hands out
// everything due at the agent's current clock.
class SimTransport : public Transport {
public:
    SimTransport(int num_agents, const DelayModel &delay, std::uint64_t seed,
                 bool keep_log = false);

    // Virtual clock of the agent that is about to act; used as enqueue time.
    void set_now(std::uint64_t now_us) { now_us_ = now_us; }
    // Clock of the agent draining next; set by the driver before drain().
    void set_recipient_clock(std::uint64_t now_us) { recipient_clock_us_ = now_us; }

    std::uint64_t broadcast(int sender, MsgKind kind, Payload payload) override;
    std::uint64_t unicast(int sender, int recipient, MsgKind kind, Payload payload) override;
    std::vector<Envelope> drain(int agent) override;

    // Earliest pending delivery for `agent`, or UINT64_MAX.
    std::uint64_t next_delivery_us(int agent) const;
    bool has_pending(int agent) const;

    TransportCounters counters() const override { return counters_; }
    int num_agents() const override { return n_; }

    const std::vector<Envelope> &log() const { return log_; }

private:
    struct Pending {
        std::uint64_t deliver_us;
        std::uint64_t order; // global enqueue order, breaks delivery ties
        Envelope env;
        friend bool operator>(const Pending &a, const Pending &b) {
            if (a.deliver_us != b.deliver_us)
                return a.deliver_us > b.deliver_us;
            return a.order > b.order;
        }
    };

    void enqueue(int sender, int recipient, MsgKind kind, const Payload &payload,
                 std::uint64_t seq);

    int n_;
    DelayModel delay_;
    util::Rng rng_;
    std::uint64_t now_us_ = 0;
    std::uint64_t recipient_clock_us_ = 0;
    std::uint64_t order_counter_ = 0;
    std::vector<std::uint64_t> send_seq_;   // per sender
    std::vector<std::vector<std::uint64_t>> channel_floor_us_; // [sender][recipient]
    std::vector<std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>>> inbox_;
    TransportCounters counters_;
    bool keep_log_;
    std::vector<Envelope> log_;
};

} // namespace dmaplan::net
