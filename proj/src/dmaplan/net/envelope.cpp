#include "dmaplan/net/envelope.hpp"

#include <json.hpp>

namespace dmaplan::net {

using nlohmann::json;

const char *to_string(MsgKind kind) {
    switch (kind) {
    case MsgKind::STATE: return "STATE";
    case MsgKind::STATUS: return "STATUS";
    case MsgKind::TERMINATE: return "TERMINATE";
    case MsgKind::TRACE_REQ: return "TRACE_REQ";
    case MsgKind::TRACE_REP: return "TRACE_REP";
    }
    return "?";
}

namespace {

MsgKind kind_from_string(const std::string &s) {
    if (s == "STATE") return MsgKind::STATE;
    if (s == "STATUS") return MsgKind::STATUS;
    if (s == "TERMINATE") return MsgKind::TERMINATE;
    if (s == "TRACE_REQ") return MsgKind::TRACE_REQ;
    if (s == "TRACE_REP") return MsgKind::TRACE_REP;
    throw FramingError("unknown message kind '" + s + "'");
}

std::string bytes_to_hex(const std::string &bytes) {
    static const char *digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

std::string hex_to_bytes(const std::string &hex) {
    if (hex.size() % 2 != 0)
        throw FramingError("odd hex string length");
    auto value = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        throw FramingError("invalid hex digit");
    };
    std::string out(hex.size() / 2, '\0');
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<char>((value(hex[2 * i]) << 4) | value(hex[2 * i + 1]));
    return out;
}

json plan_to_json(const model::Plan &plan) {
    json arr = json::array();
    for (const model::PlanStep &s : plan)
        arr.push_back(json::array({s.agent, s.action_name}));
    return arr;
}

model::Plan plan_from_json(const json &arr) {
    model::Plan plan;
    for (const json &e : arr)
        plan.push_back({e.at(0).get<int>(), e.at(1).get<std::string>()});
    return plan;
}

json payload_to_json(const Envelope &e) {
    json p;
    switch (e.kind) {
    case MsgKind::STATE: {
        const auto &sp = std::get<StatePayload>(e.payload);
        p["public"] = bytes_to_hex(sp.public_bytes);
        json toks = json::array();
        for (const model::Token &t : sp.tokens)
            toks.push_back(t.to_hex());
        p["tokens"] = toks;
        p["flags"] = sp.private_goal_flags;
        p["g"] = sp.g;
        p["depth"] = sp.depth;
        p["parent_ref"] = sp.parent_ref;
        break;
    }
    case MsgKind::STATUS: {
        const auto &st = std::get<StatusPayload>(e.payload);
        p["status"] = static_cast<int>(st.status);
        p["withheld"] = st.withheld_count;
        p["sent"] = st.states_sent;
        p["received"] = st.states_received;
        p["probe"] = st.probe_round;
        p["ack"] = st.ack_round;
        break;
    }
    case MsgKind::TERMINATE: {
        const auto &t = std::get<TerminatePayload>(e.payload);
        p["solved"] = t.solved;
        p["plan"] = plan_to_json(t.plan);
        p["cost"] = t.cost;
        break;
    }
    case MsgKind::TRACE_REQ: {
        p["msg_seq"] = std::get<TraceReqPayload>(e.payload).msg_seq;
        break;
    }
    case MsgKind::TRACE_REP: {
        const auto &t = std::get<TraceRepPayload>(e.payload);
        p["msg_seq"] = t.msg_seq;
        p["prefix"] = plan_to_json(t.prefix);
        break;
    }
    }
    return p;
}

Payload payload_from_json(MsgKind kind, const json &p) {
    switch (kind) {
    case MsgKind::STATE: {
        StatePayload sp;
        sp.public_bytes = hex_to_bytes(p.at("public").get<std::string>());
        for (const json &t : p.at("tokens"))
            sp.tokens.push_back(model::Token::from_hex(t.get<std::string>()));
        sp.private_goal_flags = p.at("flags").get<std::vector<std::uint8_t>>();
        sp.g = p.at("g").get<double>();
        sp.depth = p.at("depth").get<int>();
        sp.parent_ref = p.at("parent_ref").get<std::uint64_t>();
        return sp;
    }
    case MsgKind::STATUS: {
        StatusPayload st;
        st.status = static_cast<AgentStatus>(p.at("status").get<int>());
        st.withheld_count = p.at("withheld").get<std::uint64_t>();
        st.states_sent = p.at("sent").get<std::uint64_t>();
        st.states_received = p.at("received").get<std::uint64_t>();
        st.probe_round = p.at("probe").get<std::int64_t>();
        st.ack_round = p.at("ack").get<std::int64_t>();
        return st;
    }
    case MsgKind::TERMINATE: {
        TerminatePayload t;
        t.solved = p.at("solved").get<bool>();
        t.plan = plan_from_json(p.at("plan"));
        t.cost = p.at("cost").get<double>();
        return t;
    }
    case MsgKind::TRACE_REQ: {
        return TraceReqPayload{p.at("msg_seq").get<std::uint64_t>()};
    }
    case MsgKind::TRACE_REP: {
        TraceRepPayload t;
        t.msg_seq = p.at("msg_seq").get<std::uint64_t>();
        t.prefix = plan_from_json(p.at("prefix"));
        return t;
    }
    }
    throw FramingError("bad message kind");
}

} // namespace

bool operator==(const Envelope &a, const Envelope &b) {
    if (a.kind != b.kind || a.sender != b.sender || a.recipient != b.recipient || a.seq != b.seq ||
        a.enqueue_us != b.enqueue_us || a.deliver_us != b.deliver_us)
        return false;
    return envelope_to_json(a) == envelope_to_json(b);
}

std::string envelope_to_json(const Envelope &e) {
    json doc;
    doc["kind"] = to_string(e.kind);
    doc["sender"] = e.sender;
    doc["recipient"] = e.recipient;
    doc["seq"] = e.seq;
    doc["enqueue_us"] = e.enqueue_us;
    doc["deliver_us"] = e.deliver_us;
    doc["payload"] = payload_to_json(e);
    return doc.dump(); // nlohmann object keys are sorted
}

Envelope envelope_from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &ex) {
        throw FramingError(std::string("invalid envelope JSON: ") + ex.what());
    }
    try {
        Envelope e;
        e.kind = kind_from_string(doc.at("kind").get<std::string>());
        e.sender = doc.at("sender").get<int>();
        e.recipient = doc.at("recipient").get<int>();
        e.seq = doc.at("seq").get<std::uint64_t>();
        e.enqueue_us = doc.at("enqueue_us").get<std::uint64_t>();
        e.deliver_us = doc.at("deliver_us").get<std::uint64_t>();
        if (e.deliver_us < e.enqueue_us)
            throw FramingError("deliver time precedes enqueue time");
        e.payload = payload_from_json(e.kind, doc.at("payload"));
        return e;
    } catch (const json::exception &ex) {
        throw FramingError(std::string("malformed envelope: ") + ex.what());
    } catch (const std::invalid_argument &ex) {
        // e.g. token fields with malformed hex
        throw FramingError(std::string("malformed envelope: ") + ex.what());
    }
}

std::string frame(const Envelope &envelope) {
    std::string body = envelope_to_json(envelope);
    if (body.size() > kMaxFrameBytes)
        throw FramingError("frame exceeds 64 MiB");
    std::string out;
    out.reserve(body.size() + 4);
    std::uint32_t len = static_cast<std::uint32_t>(body.size());
    out.push_back(static_cast<char>((len >> 24) & 0xff));
    out.push_back(static_cast<char>((len >> 16) & 0xff));
    out.push_back(static_cast<char>((len >> 8) & 0xff));
    out.push_back(static_cast<char>(len & 0xff));
    out += body;
    return out;
}

Envelope unframe(const std::string &bytes) {
    if (bytes.size() < 4)
        throw FramingError("truncated frame header");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i)
        len = (len << 8) | static_cast<unsigned char>(bytes[static_cast<std::size_t>(i)]);
    if (len == 0)
        throw FramingError("empty frame");
    if (len > kMaxFrameBytes)
        throw FramingError("frame exceeds 64 MiB");
    if (bytes.size() < 4 + static_cast<std::size_t>(len))
        throw FramingError("truncated frame body");
    return envelope_from_json(bytes.substr(4, len));
}

} // namespace dmaplan::net
