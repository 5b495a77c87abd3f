#include "dmaplan/novelty/novelty_table.hpp"

#include "dmaplan/util/rng.hpp"

#include <stdexcept>

namespace dmaplan::novelty {

SearchNoveltyTable::SearchNoveltyTable(int max_level, std::size_t universe_size)
    : max_level_(max_level), universe_size_(universe_size) {
    if (max_level != 1 && max_level != 2)
        throw std::invalid_argument("novelty cap must be 1 or 2");
}

void SearchNoveltyTable::grow_universe(std::size_t universe_size) {
    if (universe_size > universe_size_)
        universe_size_ = universe_size;
}

int SearchNoveltyTable::evaluate_and_insert(const std::vector<std::uint32_t> &atoms,
                                            std::uint64_t h_key) {
    Partition &part = partitions_[h_key];
    if (part.seen_atoms.size() < universe_size_)
        part.seen_atoms.resize(universe_size_);

    bool new_atom = false;
    for (std::uint32_t a : atoms) {
        if (a >= universe_size_)
            throw std::logic_error("novelty: atom outside universe");
        if (!part.seen_atoms.test(a)) {
            part.seen_atoms.set(a);
            new_atom = true;
        }
    }

    bool new_pair = false;
    if (max_level_ == 2) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j) {
                std::uint64_t key = (std::uint64_t(atoms[i]) << 32) | atoms[j];
                if (part.seen_pairs.insert(key).second)
                    new_pair = true;
            }
    }

    if (new_atom)
        return 1;
    if (max_level_ == 2 && new_pair)
        return 2;
    return beyond(max_level_);
}

OutgoingNoveltyTable::OutgoingNoveltyTable(int num_public_facts, int max_level)
    : num_public_(num_public_facts), max_level_(max_level) {
    if (max_level != 1 && max_level != 2)
        throw std::invalid_argument("outgoing novelty cap must be 1 or 2");
}

std::size_t OutgoingNoveltyTable::pair_index(std::size_t a, std::size_t b) const {
    // upper triangle, a < b
    std::size_t n = static_cast<std::size_t>(num_public_);
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

OutgoingNoveltyTable::Partition &OutgoingNoveltyTable::partition(std::uint64_t h_key) {
    Partition &part = partitions_[h_key];
    if (part.seen_atoms.size() == 0 && num_public_ > 0) {
        part.seen_atoms = Bitset(static_cast<std::size_t>(num_public_));
        if (max_level_ == 2) {
            std::size_t n = static_cast<std::size_t>(num_public_);
            part.seen_pairs = Bitset(n * (n - 1) / 2);
        }
    }
    return part;
}

int OutgoingNoveltyTable::probe(const Bitset &projection, std::uint64_t h_key) {
    if (projection.size() != static_cast<std::size_t>(num_public_))
        throw std::logic_error("outgoing novelty: projection has wrong universe");
    Partition &part = partition(h_key);
    pending_probes_[util::hash_combine(h_key, projection.hash())] += 1;

    if (num_public_ == 0 || !projection.any())
        return sentinel();
    if (projection.any_and_not(part.seen_atoms))
        return 1;
    if (max_level_ == 2) {
        std::vector<std::uint32_t> atoms = projection.set_bits();
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                if (!part.seen_pairs.test(pair_index(atoms[i], atoms[j])))
                    return 2;
    }
    return sentinel();
}

void OutgoingNoveltyTable::commit(const Bitset &projection, std::uint64_t h_key) {
    auto it = pending_probes_.find(util::hash_combine(h_key, projection.hash()));
    if (it == pending_probes_.end() || it->second <= 0)
        throw std::logic_error("outgoing novelty: commit without prior probe");
    if (--it->second == 0)
        pending_probes_.erase(it);

    Partition &part = partition(h_key);
    part.seen_atoms.or_assign(projection);
    if (max_level_ == 2) {
        std::vector<std::uint32_t> atoms = projection.set_bits();
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                part.seen_pairs.set(pair_index(atoms[i], atoms[j]));
    }
}

} // namespace dmaplan::novelty
