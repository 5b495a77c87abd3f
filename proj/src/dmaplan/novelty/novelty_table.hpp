#pragma once

#include "dmaplan/kernels/bitset.hpp"

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dmaplan::novelty {

using kernels::Bitset;

// Novelty value strictly greater than every computed level at the given cap.
constexpr int beyond(int max_level) {
    return max_level + 1;
}

// Seen-tuple record for search guidance, partitioned by a packed tuple of
// heuristic values. Atoms live in a growable universe: fact ids first, then
// interned foreign-token atoms. Pair tuples are tracked only at cap 2.
class SearchNoveltyTable {
public:
    explicit SearchNoveltyTable(int max_level, std::size_t universe_size = 0);

    void grow_universe(std::size_t universe_size);

    // `atoms` must be sorted, unique, and inside the universe. Returns the
    // novelty level (1, 2, or beyond(max_level)) and marks all tuples of the
    // state as seen in the partition of `h_key`.
    int evaluate_and_insert(const std::vector<std::uint32_t> &atoms, std::uint64_t h_key);

private:
    struct Partition {
        Bitset seen_atoms;
        std::unordered_set<std::uint64_t> seen_pairs; // (lo<<32)|hi, used at cap 2
    };

    int max_level_;
    std::size_t universe_size_;
    std::unordered_map<std::uint64_t, Partition> partitions_;
};

// Seen-tuple record over the public-fact universe for the outgoing filter.
// Two-phase: probe() computes the value against previously *transmitted*
// states without mutating; commit() marks the tuples when the caller
// actually sends. A commit without a matching earlier probe is a contract
// violation. Values: 1, 2, or the sentinel |P_pub|+1.
class OutgoingNoveltyTable {
public:
    OutgoingNoveltyTable(int num_public_facts, int max_level);

    int sentinel() const { return num_public_ + 1; }
    int max_level() const { return max_level_; }

    int probe(const Bitset &projection, std::uint64_t h_key);
    void commit(const Bitset &projection, std::uint64_t h_key);

private:
    struct Partition {
        Bitset seen_atoms;
        Bitset seen_pairs; // upper-triangular over public indices, cap 2 only
    };

    std::size_t pair_index(std::size_t a, std::size_t b) const;
    Partition &partition(std::uint64_t h_key);

    int num_public_;
    int max_level_;
    std::unordered_map<std::uint64_t, Partition> partitions_;
    std::unordered_map<std::uint64_t, int> pending_probes_; // (h_key, proj hash) -> count
};

} // namespace dmaplan::novelty
