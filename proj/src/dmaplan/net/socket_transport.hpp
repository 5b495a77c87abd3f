#pragma once

#include "dmaplan/net/delay.hpp"
#include "dmaplan/net/transport.hpp"
#include "dmaplan/util/rng.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace dmaplan::net {

// Loopback TCP transport: one listener per agent, a full connection mesh,
// and the frame/unframe wire format. Per agent, a receiver thread reads
// frames into an inbox and an outbox thread writes frames when their
// delay-scheduled due time arrives. Unlike the simulation transport, no
// cross-channel ordering is promised.
class SocketTransport : public Transport {
public:
    SocketTransport(int num_agents, const DelayModel &delay, std::uint64_t seed);
    ~SocketTransport() override;

    std::uint64_t broadcast(int sender, MsgKind kind, Payload payload) override;
    std::uint64_t unicast(int sender, int recipient, MsgKind kind, Payload payload) override;

    std::vector<Envelope> drain(int agent) override;
    // Blocks up to `timeout_us` for at least one envelope.
    std::vector<Envelope> drain_wait(int agent, std::uint64_t timeout_us);

    TransportCounters counters() const override;
    int num_agents() const override { return n_; }

    void shutdown();

private:
    struct Outgoing {
        std::uint64_t due_us;
        std::uint64_t order;
        int recipient;
        std::string frame;
        friend bool operator>(const Outgoing &a, const Outgoing &b) {
            if (a.due_us != b.due_us)
                return a.due_us > b.due_us;
            return a.order > b.order;
        }
    };

    struct PerAgent {
        std::vector<int> send_fds; // indexed by recipient, -1 on self
        std::vector<int> recv_fds;
        std::mutex inbox_mutex;
        std::condition_variable inbox_cv;
        std::deque<Envelope> inbox;
        std::mutex outbox_mutex;
        std::condition_variable outbox_cv;
        std::priority_queue<Outgoing, std::vector<Outgoing>, std::greater<Outgoing>> outbox;
        util::Rng delay_rng{0};
        std::uint64_t send_seq = 0;
        std::uint64_t order = 0;
        std::thread receiver;
        std::thread sender_thread;
    };

    std::uint64_t now_us() const;
    void enqueue(int sender, int recipient, MsgKind kind, const Payload &payload,
                 std::uint64_t seq);
    void receiver_loop(int agent);
    void sender_loop(int agent);

    int n_;
    DelayModel delay_;
    std::atomic<bool> stop_{false};
    std::atomic<std::uint64_t> sent_{0};
    std::atomic<std::uint64_t> delivered_{0};
    std::vector<int> listen_fds_;
    std::vector<int> ports_;
    std::vector<std::unique_ptr<PerAgent>> agents_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace dmaplan::net
