#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "eulermean/common.hpp"
#include "eulermean/kahan.hpp"
#include "eulermean/numtheory.hpp"
#include "eulermean/special.hpp"

namespace eulermean {

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// unbiased uniform draw from [1, n] by rejection (no modulo bias)
inline uint64_t uniform_1_to_n(std::mt19937_64& rng, uint64_t n) {
    const uint64_t threshold = (0 - n) % n; // == 2^64 mod n
    uint64_t r;
    do r = rng(); while (r < threshold);
    return r % n + 1;
}

} // namespace detail

struct McGcdResult {
    uint32_t tuple_size = 2;
    uint64_t sample_bound = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    uint32_t streams = 1;
    uint64_t coprime_count = 0;
    double coprime_fraction = 0.0;
    double reference = 0.0; // 1/zeta(n)
    double std_error = 0.0; // sqrt(p(1-p)/samples)
};

/// Monte Carlo estimate of P[gcd(m_1..m_n) = 1] for uniform draws from [1, N],
/// against the reference 1/zeta(n). Stream i is seeded with
/// splitmix64(seed ^ golden*(i+1)) and streams merge in fixed order, so a
/// fixed (seed, streams) pair reproduces bit-identically.
inline McGcdResult mc_gcd(uint32_t tuple_size, uint64_t sample_bound, uint64_t samples,
                          uint64_t seed, uint32_t streams = 1,
                          const EvalSettings& settings = {}) {
    require(tuple_size >= 2, "mc_gcd: tuple size must be >= 2");
    require(sample_bound >= 2, "mc_gcd: sample bound must be >= 2");
    require(samples >= 1000, "mc_gcd: need at least 10^3 samples");
    require(streams >= 1, "mc_gcd: streams must be >= 1");

    uint64_t coprime = 0;
    for (uint32_t i = 0; i < streams; ++i) {
        const uint64_t share = samples / streams + (i < samples % streams ? 1 : 0);
        std::mt19937_64 rng(streams == 1 ? seed
                                         : detail::splitmix64(seed ^ (0x9E3779B97F4A7C15ull *
                                                                      (uint64_t{i} + 1))));
        for (uint64_t j = 0; j < share; ++j) {
            uint64_t g = detail::uniform_1_to_n(rng, sample_bound);
            for (uint32_t t = 1; t < tuple_size && g != 1; ++t)
                g = binary_gcd(g, detail::uniform_1_to_n(rng, sample_bound));
            if (g == 1) ++coprime;
        }
    }

    McGcdResult res;
    res.tuple_size = tuple_size;
    res.sample_bound = sample_bound;
    res.samples = samples;
    res.seed = seed;
    res.streams = streams;
    res.coprime_count = coprime;
    res.coprime_fraction = static_cast<double>(coprime) / static_cast<double>(samples);
    res.reference = 1.0 / zeta(cplx(static_cast<double>(tuple_size), 0.0), settings).real();
    res.std_error = std::sqrt(res.coprime_fraction * (1.0 - res.coprime_fraction) /
                              static_cast<double>(samples));
    return res;
}

/// Exact coprime fraction over all of [1, N]^2 (pair case only; O(N^2) gcds).
inline double exhaustive_coprime_fraction(uint64_t sample_bound) {
    require(sample_bound >= 1, "exhaustive_coprime_fraction: bound must be >= 1");
    uint64_t coprime = 0;
    for (uint64_t a = 1; a <= sample_bound; ++a)
        for (uint64_t b = 1; b <= sample_bound; ++b)
            if (binary_gcd(a, b) == 1) ++coprime;
    return static_cast<double>(coprime) /
           (static_cast<double>(sample_bound) * static_cast<double>(sample_bound));
}

/// q = P_{m<=N}[p | m] = floor(N/p)/N, exact; |q - 1/p| <= 1/N.
inline double q_probability(uint64_t p, uint64_t n) {
    require(is_prime(p), "q_probability: p must be prime");
    require(n >= 1, "q_probability: N must be >= 1");
    return static_cast<double>(n / p) / static_cast<double>(n);
}

/// The finite-N probability mean (1/N) sum_{m<=N} prod_{p|m} (1 - q^{n-1})
/// with q = floor(N/p)/N per prime. Exact slow path, N <= 10^5, 2 <= n <= 6.
inline double finite_probability_mean(uint32_t tuple_size, uint64_t n_terms) {
    require(tuple_size >= 2 && tuple_size <= 6,
            "finite_probability_mean: tuple size must be in [2, 6]");
    require(n_terms >= 1 && n_terms <= 100'000,
            "finite_probability_mean: N must be in [1, 10^5]");
    if (n_terms == 1) return 1.0; // empty product
    const SpfTable table = sieve_spf(n_terms);

    // 1 - q^{n-1} per prime, indexed by the prime itself
    std::vector<double> weight(n_terms + 1, 1.0);
    for (uint64_t p = 2; p <= n_terms; ++p) {
        if (table.spf[p] != p) continue;
        const double q = q_probability(p, n_terms);
        double qe = q;
        for (uint32_t i = 2; i < tuple_size; ++i) qe *= q;
        weight[p] = 1.0 - qe;
    }

    KahanReal acc;
    acc.add(1.0); // m = 1
    for (uint64_t m = 2; m <= n_terms; ++m) {
        double f = 1.0;
        uint64_t r = m;
        while (r > 1) {
            const uint64_t p = table.spf[r];
            f *= weight[p];
            do r /= p; while (r % p == 0);
        }
        acc.add(f);
    }
    return acc.value() / static_cast<double>(n_terms);
}

} // namespace eulermean
