#include "dmaplan/net/socket_transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

namespace dmaplan::net {

namespace {

[[noreturn]] void sys_fail(const char *what) {
    throw std::runtime_error(std::string("socket transport: ") + what + ": " +
                             std::strerror(errno));
}

void write_all(int fd, const char *data, std::size_t len) {
    while (len > 0) {
        ssize_t w = ::write(fd, data, len);
        if (w < 0) {
            if (errno == EINTR)
                continue;
            return; // peer gone; termination in progress
        }
        data += w;
        len -= static_cast<std::size_t>(w);
    }
}

} // namespace

SocketTransport::SocketTransport(int num_agents, const DelayModel &delay, std::uint64_t seed)
    : n_(num_agents), delay_(delay), start_(std::chrono::steady_clock::now()) {
    validate(delay);
    listen_fds_.assign(static_cast<std::size_t>(n_), -1);
    ports_.assign(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0)
            sys_fail("socket");
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        addr.sin_port = 0;
        if (::bind(fd, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) < 0)
            sys_fail("bind");
        if (::listen(fd, n_ + 1) < 0)
            sys_fail("listen");
        socklen_t len = sizeof(addr);
        ::getsockname(fd, reinterpret_cast<sockaddr *>(&addr), &len);
        listen_fds_[static_cast<std::size_t>(i)] = fd;
        ports_[static_cast<std::size_t>(i)] = ntohs(addr.sin_port);
    }

    for (int i = 0; i < n_; ++i) {
        agents_.push_back(std::make_unique<PerAgent>());
        agents_.back()->send_fds.assign(static_cast<std::size_t>(n_), -1);
        agents_.back()->delay_rng =
            util::Rng(util::derive_seed(seed, 0x50c4e7u + static_cast<std::uint64_t>(i)));
    }

    // Full mesh: every agent connects to every listener, then accept.
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (i == j)
                continue;
            int fd = ::socket(AF_INET, SOCK_STREAM, 0);
            if (fd < 0)
                sys_fail("socket");
            int one = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
            sockaddr_in addr{};
            addr.sin_family = AF_INET;
            addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
            addr.sin_port = htons(static_cast<std::uint16_t>(ports_[static_cast<std::size_t>(j)]));
            if (::connect(fd, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) < 0)
                sys_fail("connect");
            agents_[static_cast<std::size_t>(i)]->send_fds[static_cast<std::size_t>(j)] = fd;
        }
    }
    for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < n_ - 1; ++k) {
            int fd = ::accept(listen_fds_[static_cast<std::size_t>(j)], nullptr, nullptr);
            if (fd < 0)
                sys_fail("accept");
            agents_[static_cast<std::size_t>(j)]->recv_fds.push_back(fd);
        }
    }

    for (int i = 0; i < n_; ++i) {
        agents_[static_cast<std::size_t>(i)]->receiver =
            std::thread([this, i] { receiver_loop(i); });
        agents_[static_cast<std::size_t>(i)]->sender_thread =
            std::thread([this, i] { sender_loop(i); });
    }
}

SocketTransport::~SocketTransport() {
    shutdown();
}

void SocketTransport::shutdown() {
    bool expected = false;
    if (!stop_.compare_exchange_strong(expected, true))
        return;
    for (auto &agent : agents_) {
        agent->outbox_cv.notify_all();
        agent->inbox_cv.notify_all();
    }
    for (auto &agent : agents_) {
        if (agent->sender_thread.joinable())
            agent->sender_thread.join();
        if (agent->receiver.joinable())
            agent->receiver.join();
    }
    for (auto &agent : agents_) {
        for (int fd : agent->send_fds)
            if (fd >= 0)
                ::close(fd);
        for (int fd : agent->recv_fds)
            ::close(fd);
    }
    for (int fd : listen_fds_)
        if (fd >= 0)
            ::close(fd);
}

std::uint64_t SocketTransport::now_us() const {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
}

void SocketTransport::enqueue(int sender, int recipient, MsgKind kind, const Payload &payload,
                              std::uint64_t seq) {
    PerAgent &a = *agents_[static_cast<std::size_t>(sender)];
    Envelope env;
    env.kind = kind;
    env.sender = sender;
    env.recipient = recipient;
    env.seq = seq;
    env.enqueue_us = now_us();
    env.deliver_us = env.enqueue_us + sample_delay_us(delay_, a.delay_rng);
    env.payload = payload;

    Outgoing out;
    out.due_us = env.deliver_us;
    out.recipient = recipient;
    out.frame = frame(env);
    {
        std::lock_guard<std::mutex> lock(a.outbox_mutex);
        out.order = a.order++;
        a.outbox.push(std::move(out));
    }
    sent_.fetch_add(1, std::memory_order_relaxed);
    a.outbox_cv.notify_one();
}

std::uint64_t SocketTransport::broadcast(int sender, MsgKind kind, Payload payload) {
    std::uint64_t seq = agents_[static_cast<std::size_t>(sender)]->send_seq++;
    for (int r = 0; r < n_; ++r)
        if (r != sender)
            enqueue(sender, r, kind, payload, seq);
    return seq;
}

std::uint64_t SocketTransport::unicast(int sender, int recipient, MsgKind kind, Payload payload) {
    std::uint64_t seq = agents_[static_cast<std::size_t>(sender)]->send_seq++;
    enqueue(sender, recipient, kind, payload, seq);
    return seq;
}

void SocketTransport::sender_loop(int agent) {
    PerAgent &a = *agents_[static_cast<std::size_t>(agent)];
    // system_clock waits map to pthread_cond_timedwait, which thread
    // sanitizers model; steady-clock wait_for would use the uninstrumented
    // pthread_cond_clockwait on common libstdc++ builds
    auto wait_us = [&](std::unique_lock<std::mutex> &lock, std::uint64_t us) {
        a.outbox_cv.wait_until(lock, std::chrono::system_clock::now() +
                                         std::chrono::microseconds(us));
    };
    std::unique_lock<std::mutex> lock(a.outbox_mutex);
    while (!stop_.load()) {
        if (a.outbox.empty()) {
            wait_us(lock, 20000);
            continue;
        }
        std::uint64_t now = now_us();
        const Outgoing &top = a.outbox.top();
        if (top.due_us > now) {
            wait_us(lock, top.due_us - now);
            continue;
        }
        Outgoing item = a.outbox.top();
        a.outbox.pop();
        lock.unlock();
        int fd = a.send_fds[static_cast<std::size_t>(item.recipient)];
        write_all(fd, item.frame.data(), item.frame.size());
        lock.lock();
    }
}

void SocketTransport::receiver_loop(int agent) {
    PerAgent &a = *agents_[static_cast<std::size_t>(agent)];
    std::vector<std::string> buffers(a.recv_fds.size());
    std::vector<pollfd> fds(a.recv_fds.size());
    for (std::size_t i = 0; i < a.recv_fds.size(); ++i)
        fds[i] = pollfd{a.recv_fds[i], POLLIN, 0};

    char chunk[4096];
    while (!stop_.load()) {
        int ready = ::poll(fds.data(), fds.size(), 20);
        if (ready <= 0)
            continue;
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (!(fds[i].revents & POLLIN))
                continue;
            ssize_t got = ::read(fds[i].fd, chunk, sizeof(chunk));
            if (got <= 0)
                continue;
            buffers[i].append(chunk, static_cast<std::size_t>(got));
            // Extract complete frames.
            for (;;) {
                if (buffers[i].size() < 4)
                    break;
                std::uint32_t len = 0;
                for (int b = 0; b < 4; ++b)
                    len = (len << 8) | static_cast<unsigned char>(buffers[i][static_cast<std::size_t>(b)]);
                if (len == 0 || len > kMaxFrameBytes) {
                    buffers[i].clear(); // framing error: drop connection state
                    break;
                }
                if (buffers[i].size() < 4 + static_cast<std::size_t>(len))
                    break;
                std::string one = buffers[i].substr(0, 4 + len);
                buffers[i].erase(0, 4 + len);
                try {
                    Envelope env = unframe(one);
                    std::lock_guard<std::mutex> lock(a.inbox_mutex);
                    a.inbox.push_back(std::move(env));
                    a.inbox_cv.notify_one();
                } catch (const FramingError &) {
                    // malformed frame: count as dropped by the worker layer
                }
            }
        }
    }
}

std::vector<Envelope> SocketTransport::drain(int agent) {
    PerAgent &a = *agents_[static_cast<std::size_t>(agent)];
    std::vector<Envelope> out;
    std::lock_guard<std::mutex> lock(a.inbox_mutex);
    while (!a.inbox.empty()) {
        out.push_back(std::move(a.inbox.front()));
        a.inbox.pop_front();
        delivered_.fetch_add(1, std::memory_order_relaxed);
    }
    return out;
}

std::vector<Envelope> SocketTransport::drain_wait(int agent, std::uint64_t timeout_us) {
    PerAgent &a = *agents_[static_cast<std::size_t>(agent)];
    std::unique_lock<std::mutex> lock(a.inbox_mutex);
    if (a.inbox.empty())
        a.inbox_cv.wait_until(lock, std::chrono::system_clock::now() +
                                        std::chrono::microseconds(timeout_us));
    std::vector<Envelope> out;
    while (!a.inbox.empty()) {
        out.push_back(std::move(a.inbox.front()));
        a.inbox.pop_front();
        delivered_.fetch_add(1, std::memory_order_relaxed);
    }
    return out;
}

TransportCounters SocketTransport::counters() const {
    TransportCounters c;
    c.sent = sent_.load();
    c.delivered = delivered_.load();
    return c;
}

} // namespace dmaplan::net
