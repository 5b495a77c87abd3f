#include "dmaplan/kernels/bitops.hpp"

#include <cstdlib>

#if defined(__x86_64__) || defined(_M_X64)
#define DMAPLAN_X86 1
#include <immintrin.h>
#else
#define DMAPLAN_X86 0
#endif

namespace dmaplan::kernels {

namespace {

// ---------------------------------------------------------------- scalar --

bool sc_any_and_not(const std::uint64_t *a, const std::uint64_t *b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & ~b[i])
            return true;
    return false;
}

void sc_or_assign(std::uint64_t *dst, const std::uint64_t *src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] |= src[i];
}

void sc_andnot_assign(std::uint64_t *dst, const std::uint64_t *src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] &= ~src[i];
}

bool sc_or_assign_detect(std::uint64_t *dst, const std::uint64_t *src, std::size_t n) {
    std::uint64_t fresh = 0;
    for (std::size_t i = 0; i < n; ++i) {
        fresh |= src[i] & ~dst[i];
        dst[i] |= src[i];
    }
    return fresh != 0;
}

std::size_t sc_count_and(const std::uint64_t *a, const std::uint64_t *b, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        c += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
    return c;
}

std::size_t sc_count_and_not(const std::uint64_t *a, const std::uint64_t *b, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        c += static_cast<std::size_t>(__builtin_popcountll(a[i] & ~b[i]));
    return c;
}

bool sc_equal(const std::uint64_t *a, const std::uint64_t *b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

const BitOps g_scalar = {
    sc_any_and_not, sc_or_assign,     sc_andnot_assign, sc_or_assign_detect,
    sc_count_and,   sc_count_and_not, sc_equal,         "scalar",
};

// ------------------------------------------------------------------ avx2 --

#if DMAPLAN_X86

__attribute__((target("avx2"))) bool v_any_and_not(const std::uint64_t *a, const std::uint64_t *b,
                                                   std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
        // andnot(x, y) = ~x & y
        if (!_mm256_testz_si256(_mm256_andnot_si256(vb, va), _mm256_set1_epi64x(-1)))
            return true;
    }
    for (; i < n; ++i)
        if (a[i] & ~b[i])
            return true;
    return false;
}

__attribute__((target("avx2"))) void v_or_assign(std::uint64_t *dst, const std::uint64_t *src,
                                                 std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_or_si256(d, s));
    }
    for (; i < n; ++i)
        dst[i] |= src[i];
}

__attribute__((target("avx2"))) void v_andnot_assign(std::uint64_t *dst, const std::uint64_t *src,
                                                     std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_andnot_si256(s, d));
    }
    for (; i < n; ++i)
        dst[i] &= ~src[i];
}

__attribute__((target("avx2"))) bool v_or_assign_detect(std::uint64_t *dst, const std::uint64_t *src,
                                                        std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src + i));
        acc = _mm256_or_si256(acc, _mm256_andnot_si256(d, s));
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_or_si256(d, s));
    }
    std::uint64_t fresh =
        _mm256_testz_si256(acc, _mm256_set1_epi64x(-1)) ? 0 : 1;
    for (; i < n; ++i) {
        fresh |= src[i] & ~dst[i];
        dst[i] |= src[i];
    }
    return fresh != 0;
}

__attribute__((target("avx2"))) std::size_t v_count_and(const std::uint64_t *a,
                                                        const std::uint64_t *b, std::size_t n) {
    std::size_t c = 0;
    std::size_t i = 0;
    alignas(32) std::uint64_t lane[4];
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
        _mm256_store_si256(reinterpret_cast<__m256i *>(lane), _mm256_and_si256(va, vb));
        c += static_cast<std::size_t>(__builtin_popcountll(lane[0]) + __builtin_popcountll(lane[1]) +
                                      __builtin_popcountll(lane[2]) + __builtin_popcountll(lane[3]));
    }
    for (; i < n; ++i)
        c += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
    return c;
}

__attribute__((target("avx2"))) std::size_t v_count_and_not(const std::uint64_t *a,
                                                            const std::uint64_t *b, std::size_t n) {
    std::size_t c = 0;
    std::size_t i = 0;
    alignas(32) std::uint64_t lane[4];
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
        _mm256_store_si256(reinterpret_cast<__m256i *>(lane), _mm256_andnot_si256(vb, va));
        c += static_cast<std::size_t>(__builtin_popcountll(lane[0]) + __builtin_popcountll(lane[1]) +
                                      __builtin_popcountll(lane[2]) + __builtin_popcountll(lane[3]));
    }
    for (; i < n; ++i)
        c += static_cast<std::size_t>(__builtin_popcountll(a[i] & ~b[i]));
    return c;
}

__attribute__((target("avx2"))) bool v_equal(const std::uint64_t *a, const std::uint64_t *b,
                                             std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
        if (!_mm256_testz_si256(_mm256_xor_si256(va, vb), _mm256_set1_epi64x(-1)))
            return false;
    }
    for (; i < n; ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

const BitOps g_avx2 = {
    v_any_and_not, v_or_assign,     v_andnot_assign, v_or_assign_detect,
    v_count_and,   v_count_and_not, v_equal,         "avx2",
};

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2");
}

#endif // DMAPLAN_X86

const BitOps &select_ops() {
#if DMAPLAN_X86
    if (cpu_has_avx2() && std::getenv("DMAPLAN_DISABLE_AVX2") == nullptr)
        return g_avx2;
#endif
    return g_scalar;
}

} // namespace

const BitOps &scalar_ops() {
    return g_scalar;
}

const BitOps *avx2_ops() {
#if DMAPLAN_X86
    return cpu_has_avx2() ? &g_avx2 : nullptr;
#else
    return nullptr;
#endif
}

const BitOps &active_ops() {
    static const BitOps &ops = select_ops();
    return ops;
}

} // namespace dmaplan::kernels
