#include "dmaplan/io/task_json.hpp"
#include "dmaplan/net/crypto.hpp"
#include "dmaplan/net/delay.hpp"
#include "dmaplan/net/envelope.hpp"
#include "dmaplan/net/sim_transport.hpp"
#include "dmaplan/net/socket_transport.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace dmaplan;
using namespace dmaplan::net;

TEST_CASE("keyed digest tokens") {
    model::Problem p = fixtures::load_task("mbs_private_goals.json");
    AgentKey key = derive_agent_key(42, 0);

    model::State s = model::initial_state(p, 0);
    model::Token t1 = encrypt_private_part(p, 0, s, key);
    model::Token t2 = encrypt_private_part(p, 0, s, key);
    CHECK(t1 == t2); // deterministic within a run

    // a different private part produces a different token
    model::State s2 = model::apply(p, 0, p.actions[0], s); // r1_prep
    model::Token t3 = encrypt_private_part(p, 0, s2, key);
    CHECK_FALSE(t1 == t3);

    // empty private part is well-defined
    model::Problem pub_only = io::parse_task(R"({
        "name": "pub", "agents": ["a1", "a2"], "facts": ["x"],
        "init": [], "goal": [],
        "actions": [
            {"agent": "a1", "name": "mk", "pre": [], "add": ["x"], "del": []},
            {"agent": "a2", "name": "use", "pre": ["x"], "add": [], "del": []}
        ]
    })");
    model::State s3 = model::initial_state(pub_only, 0);
    model::Token t4 = encrypt_private_part(pub_only, 0, s3, key);
    CHECK_FALSE(t4.is_initial()); // digest never collides with the reserved zero token

    // different keys give different tokens for the same content
    AgentKey other = derive_agent_key(42, 1);
    CHECK_FALSE(encrypt_private_part(p, 0, s, other) == t1);
}

TEST_CASE("tokens are collision-free across all fixture private states") {
    // enumerate every reachable global state and collect each agent's
    // distinct private parts; digests must be pairwise distinct per agent
    for (const std::string &task : {std::string("mbs_private_goals.json"),
                                    std::string("minilog_c.json")}) {
        model::Problem p = fixtures::load_task(task);
        oracle::SearchResult all = oracle::search(p);
        CHECK(all.reachable_states > 1);
        for (int agent = 0; agent < p.num_agents(); ++agent) {
            AgentKey key = derive_agent_key(7, agent);
            // re-enumerate private parts via the oracle's projection trick:
            // use full state sets from a fresh search restricted to nothing
            // (we reuse reachable states through simulate over plans is
            // overkill; instead hash distinct private byte strings directly)
            std::set<std::string> parts;
            std::set<std::pair<std::uint64_t, std::uint64_t>> tokens;
            // walk some random applications from init to gather parts
            model::State s = model::initial_state(p, agent);
            std::vector<model::State> frontier{s};
            std::set<std::uint64_t> seen{s.hash()};
            while (!frontier.empty()) {
                model::State cur = frontier.back();
                frontier.pop_back();
                std::string bytes = private_part_bytes(p, agent, cur);
                if (parts.insert(bytes).second) {
                    model::Token t = keyed_digest(key, bytes);
                    CHECK(tokens.insert({t.hi, t.lo}).second); // no collision
                }
                for (int ai : p.actions_of[agent]) {
                    const model::Action &a = p.actions[static_cast<std::size_t>(ai)];
                    if (!model::applicable(p, a, cur))
                        continue;
                    model::State next = model::apply(p, agent, a, cur);
                    if (seen.insert(next.hash()).second)
                        frontier.push_back(next);
                }
            }
            CHECK(parts.size() == tokens.size());
        }
    }
}

TEST_CASE("delay model validation and sampling") {
    DelayModel zero{0.0, 0.10};
    util::Rng rng(1);
    CHECK(sample_delay_us(zero, rng) == 0);

    DelayModel bad{1000.0, 0.0};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    DelayModel model{100000.0, 0.10}; // 100 ms
    util::Rng rng2(20250808);
    const int n = 10000;
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> samples;
    for (int i = 0; i < n; ++i) {
        double v = static_cast<double>(sample_delay_us(model, rng2));
        samples.push_back(v);
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / n;
    double stdev = std::sqrt(sum2 / n - mean * mean);
    CHECK(mean == doctest::Approx(100000.0).epsilon(0.05));
    CHECK(stdev == doctest::Approx(10000.0).epsilon(0.15));

    // Kolmogorov-Smirnov against the analytic gamma CDF, alpha = 0.01
    std::sort(samples.begin(), samples.end());
    double d_max = 0.0;
    for (int i = 0; i < n; ++i) {
        double cdf = oracle::gamma_cdf(model.shape(), model.scale(), samples[static_cast<std::size_t>(i)]);
        double hi = std::fabs((i + 1.0) / n - cdf);
        double lo = std::fabs(cdf - static_cast<double>(i) / n);
        d_max = std::max({d_max, hi, lo});
    }
    double critical = 1.62762 / std::sqrt(static_cast<double>(n));
    CHECK(d_max < critical);
}

TEST_CASE("envelope framing round-trips") {
    Envelope e;
    e.kind = MsgKind::STATE;
    e.sender = 1;
    e.recipient = 0;
    e.seq = 42;
    e.enqueue_us = 1000;
    e.deliver_us = 2500;
    StatePayload sp;
    sp.public_bytes = std::string("\x05\x00", 2);
    sp.tokens = {model::Token{1, 2}, model::Token{}};
    sp.private_goal_flags = {1, 0};
    sp.g = 3.5;
    sp.depth = 4;
    sp.parent_ref = 17;
    e.payload = sp;

    std::string wire = frame(e);
    Envelope back = unframe(wire);
    CHECK(back == e);

    SUBCASE("all payload kinds round-trip") {
        Envelope s;
        s.kind = MsgKind::STATUS;
        s.payload = StatusPayload{AgentStatus::PARTIALLY_EMPTY, 3, 10, 9, 2, -1};
        CHECK(unframe(frame(s)) == s);
        Envelope t;
        t.kind = MsgKind::TERMINATE;
        t.payload = TerminatePayload{true, {{0, "go"}, {1, "stop"}}, 2.0};
        CHECK(unframe(frame(t)) == t);
        Envelope q;
        q.kind = MsgKind::TRACE_REQ;
        q.payload = TraceReqPayload{9};
        CHECK(unframe(frame(q)) == q);
        Envelope r;
        r.kind = MsgKind::TRACE_REP;
        r.payload = TraceRepPayload{9, {{0, "go"}}};
        CHECK(unframe(frame(r)) == r);
    }
    SUBCASE("framing errors") {
        CHECK_THROWS_AS(unframe(wire.substr(0, wire.size() - 3)), FramingError); // truncated
        std::string empty(4, '\0');
        CHECK_THROWS_AS(unframe(empty), FramingError); // zero length
        std::string huge = wire;
        huge[0] = 0x7f; // length > 64 MiB
        CHECK_THROWS_AS(unframe(huge), FramingError);
        std::string garbage = std::string("\x00\x00\x00\x02", 4) + "{]";
        CHECK_THROWS_AS(unframe(garbage), FramingError);
    }
}

TEST_CASE("sim transport: per-channel fifo, virtual-time order, conservation") {
    DelayModel none{0.0, 0.10};
    SimTransport t(3, none, 1);

    // zero delay: same-channel order preserved
    t.set_now(100);
    t.unicast(0, 2, MsgKind::TRACE_REQ, TraceReqPayload{1});
    t.unicast(0, 2, MsgKind::TRACE_REQ, TraceReqPayload{2});
    t.set_recipient_clock(100);
    std::vector<Envelope> got = t.drain(2);
    REQUIRE(got.size() == 2);
    CHECK(std::get<TraceReqPayload>(got[0].payload).msg_seq == 1);
    CHECK(std::get<TraceReqPayload>(got[1].payload).msg_seq == 2);

    // across channels, virtual enqueue time decides the delivery order
    SimTransport t2(3, none, 1);
    t2.set_now(700);
    t2.unicast(0, 2, MsgKind::TRACE_REQ, TraceReqPayload{10});
    t2.set_now(300);
    t2.unicast(1, 2, MsgKind::TRACE_REQ, TraceReqPayload{20});
    t2.set_recipient_clock(1000);
    got = t2.drain(2);
    REQUIRE(got.size() == 2);
    CHECK(std::get<TraceReqPayload>(got[0].payload).msg_seq == 20); // earlier virtual time first
    CHECK(std::get<TraceReqPayload>(got[1].payload).msg_seq == 10);
    CHECK(t2.counters().in_flight() == 0);

    // conservation at every point
    SimTransport t3(2, none, 1);
    t3.set_now(0);
    t3.broadcast(0, MsgKind::STATUS, StatusPayload{});
    CHECK(t3.counters().sent == 1);
    CHECK(t3.counters().in_flight() == 1);
    t3.set_recipient_clock(0);
    CHECK(t3.drain(1).size() == 1);
    CHECK(t3.counters().delivered == 1);
    CHECK(t3.counters().in_flight() == 0);
}

TEST_CASE("sim transport with delays never delivers before enqueue and keeps channel order") {
    DelayModel d{5000.0, 0.5}; // wild 50% ratio to force reordering attempts
    SimTransport t(2, d, 99);
    std::uint64_t now = 0;
    for (int i = 0; i < 50; ++i) {
        t.set_now(now);
        t.unicast(0, 1, MsgKind::TRACE_REQ, TraceReqPayload{static_cast<std::uint64_t>(i)});
        now += 100;
    }
    t.set_recipient_clock(UINT64_MAX - 1);
    std::vector<Envelope> got = t.drain(1);
    REQUIRE(got.size() == 50);
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::get<TraceReqPayload>(got[i].payload).msg_seq == i); // FIFO per channel
        CHECK(got[i].deliver_us >= got[i].enqueue_us);
    }
}

TEST_CASE("socket transport round-trips envelopes between agents") {
    DelayModel none{0.0, 0.10};
    SocketTransport t(2, none, 5);
    StatusPayload st;
    st.status = AgentStatus::EMPTY;
    st.states_sent = 7;
    t.broadcast(0, MsgKind::STATUS, st);
    std::vector<Envelope> got = t.drain_wait(1, 2000000);
    REQUIRE(got.size() == 1);
    CHECK(got[0].kind == MsgKind::STATUS);
    CHECK(std::get<StatusPayload>(got[0].payload).states_sent == 7);
    CHECK(t.counters().sent == 1);
    CHECK(t.counters().delivered == 1);
    t.shutdown();
}

TEST_CASE("mutated frames either decode or raise framing errors") {
    Envelope e;
    e.kind = MsgKind::STATE;
    StatePayload sp;
    sp.public_bytes = std::string("\x11\x22", 2);
    sp.tokens = {model::Token{3, 4}, model::Token{}};
    sp.private_goal_flags = {1, 1};
    e.payload = sp;
    std::string wire = frame(e);

    util::Rng rng(0xf4a);
    for (int rep = 0; rep < 500; ++rep) {
        std::string bytes = wire;
        int edits = 1 + static_cast<int>(rng.next_below(5));
        for (int k = 0; k < edits; ++k) {
            std::size_t pos = rng.next_below(bytes.size());
            if (rng.next_below(2))
                bytes[pos] = static_cast<char>(rng.next_below(256));
            else
                bytes.erase(pos, 1);
        }
        try {
            (void)unframe(bytes);
        } catch (const FramingError &) {
        }
    }
    CHECK(true);
}
