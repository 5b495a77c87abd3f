#pragma once

#include "dmaplan/net/envelope.hpp"

#include <cstdint>
#include <vector>

namespace dmaplan::net {

struct TransportCounters {
    std::uint64_t sent = 0;      // envelopes enqueued (one per recipient)
    std::uint64_t delivered = 0; // envelopes handed to their recipient
    std::uint64_t in_flight() const { return sent - delivered; }
};

// Cross-agent message channel. STATE/STATUS/TERMINATE fan out to every other
// agent; TRACE_* are unicast. Returns the sender-local sequence number of
// the send event.
class Transport {
public:
    virtual ~Transport() = default;

    virtual std::uint64_t broadcast(int sender, MsgKind kind, Payload payload) = 0;
    virtual std::uint64_t unicast(int sender, int recipient, MsgKind kind, Payload payload) = 0;

    // Non-blocking: everything deliverable to `agent` right now.
    virtual std::vector<Envelope> drain(int agent) = 0;

    virtual TransportCounters counters() const = 0;
    virtual int num_agents() const = 0;
};

} // namespace dmaplan::net
