#pragma once

#include <cstddef>
#include <cstdint>

namespace dmaplan::kernels {

// Word-level kernels over packed uint64_t bit arrays. All functions operate
// on `n` full words; callers keep tail bits beyond the logical size zeroed.
//
// Two implementations exist: a scalar reference and an AVX2 variant. The
// active set is chosen once at startup from CPUID (overridable with the
// DMAPLAN_DISABLE_AVX2 environment variable) and every higher-level bitset
// operation routes through it. The two must be observationally identical;
// tests/test_kernels.cpp checks them against each other on random inputs.
struct BitOps {
    // any bit set in (a & ~b)
    bool (*any_and_not)(const std::uint64_t *a, const std::uint64_t *b, std::size_t n);
    // dst |= src
    void (*or_assign)(std::uint64_t *dst, const std::uint64_t *src, std::size_t n);
    // dst &= ~src
    void (*andnot_assign)(std::uint64_t *dst, const std::uint64_t *src, std::size_t n);
    // dst |= src, returns true iff any bit of src was not already in dst
    bool (*or_assign_detect)(std::uint64_t *dst, const std::uint64_t *src, std::size_t n);
    // popcount(a & b)
    std::size_t (*count_and)(const std::uint64_t *a, const std::uint64_t *b, std::size_t n);
    // popcount(a & ~b)
    std::size_t (*count_and_not)(const std::uint64_t *a, const std::uint64_t *b, std::size_t n);
    bool (*equal)(const std::uint64_t *a, const std::uint64_t *b, std::size_t n);

    const char *name;
};

const BitOps &scalar_ops();

// AVX2 variant; null on platforms without compile-time AVX2 support in the
// toolchain. Runtime CPU support is checked separately by active_ops().
const BitOps *avx2_ops();

// The implementation selected for this process.
const BitOps &active_ops();

} // namespace dmaplan::kernels
