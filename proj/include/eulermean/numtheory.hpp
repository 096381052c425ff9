#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "eulermean/common.hpp"

namespace eulermean {

/// All primes <= limit, ascending (plain Eratosthenes).
inline std::vector<uint32_t> simple_primes(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (uint64_t d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

inline uint64_t binary_gcd(uint64_t a, uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    while (b != 0) {
        b >>= std::countr_zero(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << shift;
}

inline uint64_t default_memory_budget_bytes() {
    if (const char* env = std::getenv("EULERMEAN_MEMORY_BUDGET_MB")) {
        const long long mb = std::atoll(env);
        if (mb > 0) return static_cast<uint64_t>(mb) << 20;
    }
    return uint64_t{4096} << 20; // 4 GiB
}

/// Smallest-prime-factor table for 2..limit. Immutable once built and safe to
/// share across threads. Entries are 32-bit, so limit must stay below 2^32;
/// the flat table costs 4*(limit+1) bytes (10^8 -> 400 MB). Ranges that do
/// not fit the memory budget are served by block sieving (sieve_segment)
/// instead of a flat table.
struct SpfTable {
    uint64_t limit = 0;
    std::vector<uint32_t> spf; // spf[m] = least prime dividing m, m >= 2

    bool contains(uint64_t m) const { return m >= 2 && m <= limit; }
};

inline SpfTable sieve_spf(uint64_t limit,
                          uint64_t memory_budget_bytes = default_memory_budget_bytes()) {
    require(limit >= 2, "sieve_spf: limit must be >= 2");
    require(limit <= 0xFFFFFFFFull, "sieve_spf: limit must fit 32-bit entries (< 2^32)");
    const uint64_t required = 4 * (limit + 1);
    if (required > memory_budget_bytes)
        throw resource_error("sieve_spf: flat table needs " + std::to_string(required) +
                             " bytes, budget is " + std::to_string(memory_budget_bytes) +
                             " bytes; raise EULERMEAN_MEMORY_BUDGET_MB or use sieve_segment");
    SpfTable t;
    t.limit = limit;
    try {
        t.spf.assign(limit + 1, 0);
    } catch (const std::bad_alloc&) {
        throw resource_error("sieve_spf: allocation of " + std::to_string(required) +
                             " bytes failed");
    }
    for (uint64_t i = 2; i <= limit; ++i) {
        if (t.spf[i] != 0) continue;
        t.spf[i] = static_cast<uint32_t>(i);
        if (i <= limit / i)
            for (uint64_t j = i * i; j <= limit; j += i)
                if (t.spf[j] == 0) t.spf[j] = static_cast<uint32_t>(i);
    }
    return t;
}

/// Distinct primes dividing m, ascending. Multiplicity is dropped: every
/// Euler-like value depends only on the radical of m.
inline std::vector<uint64_t> distinct_primes(uint64_t m, const SpfTable& table) {
    require(table.contains(m), "distinct_primes: m out of table range");
    std::vector<uint64_t> ps;
    while (m > 1) {
        const uint64_t p = table.spf[m];
        ps.push_back(p);
        while (m % p == 0) m /= p;
    }
    return ps;
}

/// A block [lo, hi) mid-factorization: residual[m-lo] is what is left of m
/// after dividing out all primes <= sqrt(hi-1), i.e. 1 or a single larger prime.
struct SpfSegment {
    uint64_t lo = 0, hi = 0;
    std::vector<uint64_t> residual;
};

/// Core block scan: for every m in [lo, hi) reports each distinct prime
/// p <= sqrt(hi-1) dividing m via on_prime(offset, prime_index, p), divides
/// all powers of p out of the residual, then reports any leftover prime
/// > sqrt(hi-1) via on_leftover(offset, r). `primes` must be ascending and
/// contain every prime <= sqrt(hi-1). `residual` is caller-provided scratch
/// (reused across blocks).
template <class OnPrime, class OnLeftover>
void scan_block(uint64_t lo, uint64_t hi, std::span<const uint32_t> primes,
                std::vector<uint64_t>& residual, OnPrime&& on_prime,
                OnLeftover&& on_leftover) {
    require(lo >= 1 && hi > lo, "scan_block: need 1 <= lo < hi");
    const uint64_t root = isqrt(hi - 1);
    if (root >= 2 && (primes.empty() || primes.back() < root)) {
        // the list may stop below root only if the gap holds no prime
        for (uint64_t q = primes.empty() ? 2 : primes.back() + 1; q <= root; ++q)
            require(!is_prime(q), "scan_block: prime list must cover sqrt(hi-1)");
    }
    const size_t n = static_cast<size_t>(hi - lo);
    residual.resize(n);
    for (size_t j = 0; j < n; ++j) residual[j] = lo + j;

    for (size_t pidx = 0; pidx < primes.size(); ++pidx) {
        const uint64_t p64 = primes[pidx];
        if (p64 * p64 > hi - 1) break;
        uint64_t m = ((lo + p64 - 1) / p64) * p64;
        for (; m < hi; m += p64) {
            const size_t off = static_cast<size_t>(m - lo);
            on_prime(off, pidx, primes[pidx]);
            uint64_t& r = residual[off];
            do r /= p64; while (r % p64 == 0);
        }
    }
    for (size_t j = 0; j < n; ++j)
        if (residual[j] > 1) on_leftover(j, residual[j]);
}

inline SpfSegment sieve_segment(uint64_t lo, uint64_t hi,
                                std::span<const uint32_t> primes) {
    SpfSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    scan_block(lo, hi, primes, seg.residual, [](size_t, size_t, uint32_t) {},
               [](size_t, uint64_t) {});
    return seg;
}

/// A squarefree divisor of some integer, with its prime count.
/// sign (-1)^omega equals the Moebius value.
struct SquarefreeDivisor {
    uint64_t k = 1;
    uint32_t omega = 0;
};

/// All 2^omega(m) squarefree divisors of m (k=1 included), sorted by k.
inline std::vector<SquarefreeDivisor> squarefree_divisors(uint64_t m) {
    require(m >= 1, "squarefree_divisors: m must be >= 1");
    std::vector<uint64_t> ps;
    uint64_t r = m;
    for (uint64_t d = 2; d * d <= r; d += (d == 2 ? 1 : 2))
        if (r % d == 0) {
            ps.push_back(d);
            do r /= d; while (r % d == 0);
        }
    if (r > 1) ps.push_back(r);

    std::vector<SquarefreeDivisor> out;
    out.reserve(size_t{1} << ps.size());
    const uint32_t subsets = uint32_t{1} << ps.size();
    for (uint32_t mask = 0; mask < subsets; ++mask) {
        uint64_t k = 1;
        for (size_t i = 0; i < ps.size(); ++i)
            if (mask & (uint32_t{1} << i)) k *= ps[i];
        out.push_back({k, static_cast<uint32_t>(std::popcount(mask))});
    }
    std::sort(out.begin(), out.end(),
              [](const SquarefreeDivisor& a, const SquarefreeDivisor& b) { return a.k < b.k; });
    return out;
}

inline bool is_squarefree(uint64_t k) {
    require(k >= 1, "is_squarefree: k must be >= 1");
    if (k % 4 == 0) return false;
    for (uint64_t d = 2; d * d <= k; d += (d == 2 ? 1 : 2))
        if (k % d == 0) {
            k /= d;
            if (k % d == 0) return false;
        }
    return true;
}

/// Moebius function: 0 unless k squarefree, else (-1)^{number of prime factors}.
inline int mobius(uint64_t k) {
    require(k >= 1, "mobius: k must be >= 1");
    int parity = 0;
    for (uint64_t d = 2; d * d <= k; d += (d == 2 ? 1 : 2))
        if (k % d == 0) {
            k /= d;
            if (k % d == 0) return 0;
            ++parity;
        }
    if (k > 1) ++parity;
    return (parity & 1) ? -1 : 1;
}

} // namespace eulermean
