#pragma once

#include "dmaplan/model/problem.hpp"
#include "dmaplan/model/state.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dmaplan::net {

enum class MsgKind { STATE, STATUS, TERMINATE, TRACE_REQ, TRACE_REP };

const char *to_string(MsgKind kind);

enum class AgentStatus { ACTIVE = 0, PARTIALLY_EMPTY = 1, EMPTY = 2 };

inline bool is_waiting(AgentStatus s) {
    return s != AgentStatus::ACTIVE;
}

// Search state crossing the wire: public part in plaintext, one opaque token
// per agent's private part, never a plaintext private fact.
struct StatePayload {
    std::string public_bytes;                     // canonical projection encoding
    std::vector<model::Token> tokens;             // size n
    std::vector<std::uint8_t> private_goal_flags; // size n
    double g = 0.0;
    int depth = 0;
    std::uint64_t parent_ref = 0; // sender-local trace handle (= envelope seq)
};

// Status broadcast; also carries the termination-probe round trip.
struct StatusPayload {
    AgentStatus status = AgentStatus::ACTIVE;
    std::uint64_t withheld_count = 0;
    std::uint64_t states_sent = 0;     // this agent's cumulative STATE sends
    std::uint64_t states_received = 0; // and receipts
    std::int64_t probe_round = -1;     // >=0: coordinator probe
    std::int64_t ack_round = -1;       // >=0: reply to a probe
};

struct TerminatePayload {
    bool solved = false;
    model::Plan plan;
    double cost = 0.0;
};

struct TraceReqPayload {
    std::uint64_t msg_seq = 0;
};

struct TraceRepPayload {
    std::uint64_t msg_seq = 0;
    model::Plan prefix; // joint plan reaching the referenced message's state
};

using Payload =
    std::variant<StatePayload, StatusPayload, TerminatePayload, TraceReqPayload, TraceRepPayload>;

struct Envelope {
    MsgKind kind = MsgKind::STATUS;
    int sender = 0;
    int recipient = 0;
    std::uint64_t seq = 0; // send-event sequence, unique per sender
    std::uint64_t enqueue_us = 0;
    std::uint64_t deliver_us = 0;
    Payload payload;

    friend bool operator==(const Envelope &a, const Envelope &b);
};

class FramingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kMaxFrameBytes = 64ull << 20;

// Wire format: 4-byte big-endian payload length, then UTF-8 JSON of the
// envelope with sorted keys. unframe(frame(e)) == e.
std::string frame(const Envelope &envelope);
Envelope unframe(const std::string &bytes);

// The JSON body alone (no length prefix); used by unit tests and the
// privacy scan.
std::string envelope_to_json(const Envelope &envelope);
Envelope envelope_from_json(const std::string &json_text);

} // namespace dmaplan::net
