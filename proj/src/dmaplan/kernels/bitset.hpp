#pragma once

#include "dmaplan/kernels/bitops.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dmaplan::kernels {

// Fixed-size packed bitset. Tail bits of the last word are kept zero so the
// word-level kernels can run over whole words.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    std::size_t num_words() const { return words_.size(); }
    const std::uint64_t *data() const { return words_.data(); }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    // Grows to `nbits` keeping existing bits; never shrinks.
    void resize(std::size_t nbits) {
        if (nbits < nbits_)
            return;
        nbits_ = nbits;
        words_.resize((nbits + 63) / 64, 0);
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w)
                return true;
        return false;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_)
            c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    // a \ b nonempty?
    bool any_and_not(const Bitset &b) const {
        return active_ops().any_and_not(words_.data(), b.words_.data(), words_.size());
    }
    bool is_subset_of(const Bitset &b) const { return !any_and_not(b); }

    void or_assign(const Bitset &b) {
        active_ops().or_assign(words_.data(), b.words_.data(), words_.size());
    }
    void andnot_assign(const Bitset &b) {
        active_ops().andnot_assign(words_.data(), b.words_.data(), words_.size());
    }
    bool or_assign_detect(const Bitset &b) {
        return active_ops().or_assign_detect(words_.data(), b.words_.data(), words_.size());
    }
    std::size_t count_and(const Bitset &b) const {
        return active_ops().count_and(words_.data(), b.words_.data(), words_.size());
    }
    std::size_t count_and_not(const Bitset &b) const {
        return active_ops().count_and_not(words_.data(), b.words_.data(), words_.size());
    }

    friend bool operator==(const Bitset &a, const Bitset &b) {
        if (a.nbits_ != b.nbits_)
            return false;
        return active_ops().equal(a.words_.data(), b.words_.data(), a.words_.size());
    }

    // Indices of set bits, ascending.
    template <typename Fn>
    void for_each_set(Fn &&fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
                fn(wi * 64 + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> set_bits() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

    // Canonical little-endian byte image, exactly ceil(size/8) bytes.
    std::string to_bytes() const {
        std::string out((nbits_ + 7) / 8, '\0');
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<char>((words_[i >> 3] >> ((i & 7) * 8)) & 0xff);
        return out;
    }

    static Bitset from_bytes(const std::string &bytes, std::size_t nbits) {
        Bitset b(nbits);
        for (std::size_t i = 0; i < bytes.size() && i < (nbits + 7) / 8; ++i)
            b.words_[i >> 3] |= std::uint64_t(static_cast<unsigned char>(bytes[i])) << ((i & 7) * 8);
        return b;
    }

    std::uint64_t hash() const {
        // FNV-1a over the words; stable across runs.
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace dmaplan::kernels
