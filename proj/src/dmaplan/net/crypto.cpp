#include "dmaplan/net/crypto.hpp"

#include "dmaplan/util/rng.hpp"

namespace dmaplan::net {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int b) {
    return (x << b) | (x >> (64 - b));
}

struct SipState {
    std::uint64_t v0, v1, v2, v3;

    void round() {
        v0 += v1;
        v1 = rotl(v1, 13);
        v1 ^= v0;
        v0 = rotl(v0, 32);
        v2 += v3;
        v3 = rotl(v3, 16);
        v3 ^= v2;
        v0 += v3;
        v3 = rotl(v3, 21);
        v3 ^= v0;
        v2 += v1;
        v1 = rotl(v1, 17);
        v1 ^= v2;
        v2 = rotl(v2, 32);
    }
};

// SipHash-2-4, 128-bit output variant.
model::Token siphash128(std::uint64_t k0, std::uint64_t k1, const unsigned char *data,
                        std::size_t len) {
    SipState s{k0 ^ 0x736f6d6570736575ull, k1 ^ 0x646f72616e646f6dull,
               k0 ^ 0x6c7967656e657261ull, k1 ^ 0x7465646279746573ull};
    s.v1 ^= 0xee;

    std::size_t end = len - (len % 8);
    for (std::size_t i = 0; i < end; i += 8) {
        std::uint64_t m = 0;
        for (int b = 7; b >= 0; --b)
            m = (m << 8) | data[i + static_cast<std::size_t>(b)];
        s.v3 ^= m;
        s.round();
        s.round();
        s.v0 ^= m;
    }

    std::uint64_t b = std::uint64_t(len) << 56;
    for (std::size_t i = end; i < len; ++i)
        b |= std::uint64_t(data[i]) << (8 * (i - end));
    s.v3 ^= b;
    s.round();
    s.round();
    s.v0 ^= b;

    s.v2 ^= 0xee;
    s.round();
    s.round();
    s.round();
    s.round();
    std::uint64_t first = s.v0 ^ s.v1 ^ s.v2 ^ s.v3;

    s.v1 ^= 0xdd;
    s.round();
    s.round();
    s.round();
    s.round();
    std::uint64_t second = s.v0 ^ s.v1 ^ s.v2 ^ s.v3;

    return model::Token{first, second};
}

} // namespace

AgentKey derive_agent_key(std::uint64_t run_seed, int agent) {
    AgentKey key;
    key.k0 = util::derive_seed(run_seed, 0xa11ce000u + static_cast<std::uint64_t>(agent));
    key.k1 = util::derive_seed(run_seed, 0xb0b00000u + static_cast<std::uint64_t>(agent));
    return key;
}

model::Token keyed_digest(const AgentKey &key, const std::string &bytes) {
    model::Token t = siphash128(key.k0, key.k1,
                                reinterpret_cast<const unsigned char *>(bytes.data()), bytes.size());
    // Zero is reserved for the initial-part token.
    if (t.is_initial())
        t.lo = 1;
    return t;
}

std::string private_part_bytes(const model::Problem &problem, int agent,
                               const model::State &state) {
    const model::Bitset &mask = problem.private_mask[agent];
    model::Bitset dense(mask.count());
    std::size_t idx = 0;
    mask.for_each_set([&](std::size_t f) {
        if (state.local.test(f))
            dense.set(idx);
        ++idx;
    });
    return dense.to_bytes();
}

model::Token encrypt_private_part(const model::Problem &problem, int agent,
                                  const model::State &state, const AgentKey &key) {
    return keyed_digest(key, private_part_bytes(problem, agent, state));
}

} // namespace dmaplan::net
