#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "eulermean/common.hpp"
#include "eulermean/numtheory.hpp"

namespace eulermean {

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// prime-power factorization, ascending primes
inline std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, uint32_t>> f;
    for (uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2))
        if (n % d == 0) {
            uint32_t e = 0;
            do { n /= d; ++e; } while (n % d == 0);
            f.emplace_back(d, e);
        }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline uint64_t totient_from_factors(const std::vector<std::pair<uint64_t, uint32_t>>& f) {
    uint64_t phi = 1;
    for (auto [p, e] : f) {
        phi *= p - 1;
        for (uint32_t i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

// smallest positive primitive root mod q = p^e, p odd prime
inline uint64_t primitive_root(uint64_t q, uint64_t phi) {
    std::vector<uint64_t> prime_divs;
    for (auto [r, e] : factorize(phi)) prime_divs.push_back(r);
    for (uint64_t g = 2; g < q; ++g) {
        if (binary_gcd(g, q) != 1) continue;
        bool ok = true;
        for (uint64_t r : prime_divs)
            if (powmod(g, phi / r, q) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: search failed");
}

inline int64_t egcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    int64_t x1, y1;
    const int64_t g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline uint64_t invmod(uint64_t a, uint64_t m) {
    int64_t x, y;
    egcd(static_cast<int64_t>(a % m), static_cast<int64_t>(m), x, y);
    int64_t r = x % static_cast<int64_t>(m);
    if (r < 0) r += static_cast<int64_t>(m);
    return static_cast<uint64_t>(r);
}

} // namespace detail

/// One cyclic factor of (Z/kZ)*.
struct UnitGroupFactor {
    uint64_t generator = 1; // lifted mod k: generates this factor, == 1 in the others
    uint64_t order = 1;
};

/// (Z/kZ)* decomposed as a product of cyclic groups, with the discrete
/// logarithm of every unit residue. Factor order is fixed (2-part first, then
/// odd prime powers ascending), which makes character indexing reproducible.
struct UnitGroupDecomposition {
    uint64_t modulus = 1;
    uint64_t totient = 1;
    std::vector<UnitGroupFactor> factors;
    std::vector<uint8_t> unit;  // unit[a] = 1 iff gcd(a, k) == 1
    std::vector<uint32_t> dlog; // flattened k x factors.size()

    size_t rank() const { return factors.size(); }
    bool is_unit(uint64_t a) const { return unit[a % modulus] != 0; }
    uint32_t exponent_of(uint64_t a, size_t factor_idx) const {
        return dlog[(a % modulus) * rank() + factor_idx];
    }
};

inline constexpr uint64_t kMaxCharacterModulus = 1'000'000;
inline constexpr uint64_t kMaxEnumeratedModulus = 10'000;

inline UnitGroupDecomposition decompose_unit_group(uint64_t k) {
    require(k >= 1, "decompose_unit_group: modulus must be >= 1");
    require(k <= kMaxCharacterModulus, "decompose_unit_group: modulus above supported 10^6");

    UnitGroupDecomposition d;
    d.modulus = k;
    const auto pfac = detail::factorize(k);
    d.totient = detail::totient_from_factors(pfac);

    // local generators per prime power, then CRT-lift so each is 1 mod k/q
    for (auto [p, e] : pfac) {
        uint64_t q = 1;
        for (uint32_t i = 0; i < e; ++i) q *= p;
        std::vector<UnitGroupFactor> local;
        if (p == 2) {
            if (e == 2) local.push_back({3, 2});
            if (e >= 3) {
                local.push_back({q - 1, 2});                  // <-1>
                local.push_back({5, uint64_t{1} << (e - 2)}); // <5>
            }
        } else {
            uint64_t phi_q = q / p * (p - 1);
            local.push_back({detail::primitive_root(q, phi_q), phi_q});
        }
        const uint64_t m = k / q;
        for (auto& f : local) {
            if (m > 1) {
                // G = 1 + m*t with t = (g-1)*m^{-1} mod q  =>  G = g (q), 1 (m)
                const uint64_t t = detail::mulmod((f.generator + q - 1) % q,
                                                  detail::invmod(m % q, q), q);
                f.generator = (1 + m * t) % k;
            }
            d.factors.push_back(f);
        }
    }

    // discrete logs by enumerating all exponent vectors
    const size_t r = d.factors.size();
    d.unit.assign(k, 0);
    d.dlog.assign(k * r, 0);
    std::vector<std::vector<uint64_t>> pows(r);
    for (size_t i = 0; i < r; ++i) {
        pows[i].resize(d.factors[i].order);
        pows[i][0] = 1 % k;
        for (uint64_t j = 1; j < d.factors[i].order; ++j)
            pows[i][j] = detail::mulmod(pows[i][j - 1], d.factors[i].generator, k);
    }
    std::vector<uint32_t> digits(r, 0);
    for (uint64_t idx = 0; idx < d.totient; ++idx) {
        uint64_t a = 1 % k;
        for (size_t i = 0; i < r; ++i) a = detail::mulmod(a, pows[i][digits[i]], k);
        if (d.unit[a]) throw std::logic_error("decompose_unit_group: generators not independent");
        d.unit[a] = 1;
        for (size_t i = 0; i < r; ++i) d.dlog[a * r + i] = digits[i];
        for (size_t i = r; i-- > 0;) { // last factor least significant
            if (++digits[i] < d.factors[i].order) break;
            digits[i] = 0;
        }
    }
    return d;
}

namespace detail {

// exact values at half/quarter turns keep character tables clean (+-1, +-i)
inline cplx root_of_unity(uint64_t num, uint64_t den) {
    const uint64_t g = binary_gcd(num, den);
    num /= g;
    den /= g;
    switch (den) {
        case 1: return {1.0, 0.0};
        case 2: return {-1.0, 0.0};
        case 4: return {0.0, num == 1 ? 1.0 : -1.0};
        default: {
            const double t = 2.0 * kPi * static_cast<double>(num) / static_cast<double>(den);
            return {std::cos(t), std::sin(t)};
        }
    }
}

} // namespace detail

/// A Dirichlet character mod k: the full value table on residues plus the
/// exact exponent table. values[a] = e^{2 pi i exps[a] / value_order} for
/// units, 0 elsewhere; exact arithmetic on exps is what the tests compare.
struct DirichletCharacter {
    uint64_t modulus = 1;
    std::vector<uint32_t> index;         // exponent of the character per group factor
    std::vector<uint32_t> factor_orders; // cyclic factor orders, same order as index
    uint64_t value_order = 1;            // lcm of factor orders; 1 for the trivial group
    std::vector<int32_t> exps;           // size k, -1 on non-units
    std::vector<cplx> values;            // size k

    cplx eval(uint64_t n) const { return values[n % modulus]; }
    int32_t exp_at(uint64_t n) const { return exps[n % modulus]; }
    bool is_principal() const {
        for (int32_t u : exps)
            if (u > 0) return false;
        return true;
    }
    bool is_real() const {
        for (int32_t u : exps)
            if (u > 0 && (2 * static_cast<uint64_t>(u)) % value_order != 0) return false;
        return true;
    }
    /// order of this character in the dual group
    uint64_t order() const {
        uint64_t g = value_order;
        for (int32_t u : exps)
            if (u > 0) g = binary_gcd(g, static_cast<uint64_t>(u));
        return value_order / g;
    }
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus == b.modulus && a.exps == b.exps;
    }
};

namespace detail {

inline DirichletCharacter build_character(const UnitGroupDecomposition& d,
                                          std::vector<uint32_t> index,
                                          std::span<const cplx> shared_roots = {}) {
    const size_t r = d.rank();
    require(index.size() == r, "character: index length must match group rank");
    DirichletCharacter chi;
    chi.modulus = d.modulus;
    chi.factor_orders.reserve(r);
    uint64_t L = 1;
    for (size_t i = 0; i < r; ++i) {
        require(index[i] < d.factors[i].order, "character: index entry out of range");
        chi.factor_orders.push_back(static_cast<uint32_t>(d.factors[i].order));
        L = std::lcm(L, d.factors[i].order);
    }
    chi.value_order = L;
    chi.index = std::move(index);

    const uint64_t k = d.modulus;
    chi.exps.assign(k, -1);
    chi.values.assign(k, cplx{0.0, 0.0});
    for (uint64_t a = 0; a < k; ++a) {
        if (!d.unit[a]) continue;
        uint64_t u = 0;
        for (size_t i = 0; i < r; ++i) {
            const uint64_t di = d.factors[i].order;
            const uint64_t term = ((chi.index[i] * static_cast<uint64_t>(d.dlog[a * r + i])) % L) *
                                  (L / di) % L;
            u = (u + term) % L;
        }
        chi.exps[a] = static_cast<int32_t>(u);
        chi.values[a] = shared_roots.empty() ? root_of_unity(u, L) : shared_roots[u];
    }
    if (k == 1) { // the single residue 0 represents 1; chi is identically 1
        chi.exps[0] = 0;
        chi.values[0] = {1.0, 0.0};
    }
    return chi;
}

} // namespace detail

/// All phi(k) characters mod k, lexicographic by index vector; the principal
/// character comes first. Materializing every table is phi(k)*k values, so
/// enumeration is capped at k <= 10^4; use character_by_index above that.
inline std::vector<DirichletCharacter> character_group(uint64_t k) {
    require(k >= 1, "character_group: modulus must be >= 1");
    require(k <= kMaxEnumeratedModulus,
            "character_group: full enumeration capped at k <= 10^4; use character_by_index");
    const auto d = decompose_unit_group(k);
    uint64_t L = 1;
    for (const auto& f : d.factors) L = std::lcm(L, f.order);
    std::vector<cplx> roots(L);
    for (uint64_t u = 0; u < L; ++u) roots[u] = detail::root_of_unity(u, L);

    std::vector<DirichletCharacter> chars;
    chars.reserve(d.totient);
    std::vector<uint32_t> digits(d.rank(), 0);
    for (uint64_t idx = 0; idx < d.totient; ++idx) {
        chars.push_back(detail::build_character(d, digits, roots));
        for (size_t i = d.rank(); i-- > 0;) {
            if (++digits[i] < d.factors[i].order) break;
            digits[i] = 0;
        }
    }
    return chars;
}

/// Character by lexicographic rank (0 = principal). Builds only one table, so
/// the modulus may go up to 10^6.
inline DirichletCharacter character_by_index(uint64_t k, uint64_t rank_index) {
    const auto d = decompose_unit_group(k);
    require(rank_index < d.totient, "character_by_index: index must be < phi(k)");
    std::vector<uint32_t> digits(d.rank(), 0);
    uint64_t rem = rank_index;
    for (size_t i = d.rank(); i-- > 0;) {
        digits[i] = static_cast<uint32_t>(rem % d.factors[i].order);
        rem /= d.factors[i].order;
    }
    return detail::build_character(d, std::move(digits));
}

inline cplx eval_char(const DirichletCharacter& chi, uint64_t n) { return chi.eval(n); }

/// Pointwise square: exponents double mod the value order, so the result is
/// again a character of the same modulus.
inline DirichletCharacter char_square(const DirichletCharacter& chi) {
    DirichletCharacter sq;
    sq.modulus = chi.modulus;
    sq.factor_orders = chi.factor_orders;
    sq.value_order = chi.value_order;
    sq.index.resize(chi.index.size());
    for (size_t i = 0; i < chi.index.size(); ++i)
        sq.index[i] = static_cast<uint32_t>((2ull * chi.index[i]) % chi.factor_orders[i]);
    sq.exps.resize(chi.exps.size());
    sq.values.resize(chi.values.size());
    for (size_t a = 0; a < chi.exps.size(); ++a) {
        if (chi.exps[a] < 0) {
            sq.exps[a] = -1;
            sq.values[a] = {0.0, 0.0};
        } else {
            const uint64_t u = (2ull * static_cast<uint64_t>(chi.exps[a])) % chi.value_order;
            sq.exps[a] = static_cast<int32_t>(u);
            sq.values[a] = detail::root_of_unity(u, chi.value_order);
        }
    }
    if (chi.modulus == 1) {
        sq.exps[0] = 0;
        sq.values[0] = {1.0, 0.0};
    }
    return sq;
}

} // namespace eulermean
