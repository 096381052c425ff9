#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "eulermean/characters.hpp"
#include "eulermean/common.hpp"
#include "eulermean/numtheory.hpp"

namespace eulermean {

struct EvalSettings {
    double target_abs_tol = 1e-13;
    int euler_maclaurin_terms = 12; // Bernoulli corrections, capped at B24
    uint64_t series_cutoff = 1'000'000;
};

/// The function family f(m) = prod_{p|m} (1 + sign*chi(p)/p^{s-1}).
/// Re(s) > 1 is required for the limit statements and enforced here; the
/// summand uses exponent s-1 while the limit formulas use s.
struct EulerLikeSpec {
    int sign = +1;
    DirichletCharacter chi;
    cplx s{2.0, 0.0};

    EulerLikeSpec(int sign_, DirichletCharacter chi_, cplx s_)
        : sign(sign_), chi(std::move(chi_)), s(s_) {
        require(sign == 1 || sign == -1, "EulerLikeSpec: sign must be +1 or -1");
        require(std::isfinite(s.real()) && std::isfinite(s.imag()),
                "EulerLikeSpec: s must be finite");
        require(s.real() > 1.0, "EulerLikeSpec: Re(s) must be > 1");
        require(!chi.values.empty(), "EulerLikeSpec: character table is empty");
    }

    bool real_arithmetic() const { return s.imag() == 0.0 && chi.is_real(); }
};

namespace detail {

using lcplx = std::complex<long double>;

// exact B_{2i} for i = 1..12
struct Rational { double num, den; };
inline constexpr Rational kBernoulli[12] = {
    {1, 6},         {-1, 30},       {1, 42},       {-1, 30},
    {5, 66},        {-691, 2730},   {7, 6},        {-3617, 510},
    {43867, 798},   {-174611, 330}, {854513, 138}, {-236364091, 2730},
};

inline lcplx cpow_neg(long double base, lcplx s) {
    // base^{-s} for base > 0
    const long double lg = std::log(base);
    const long double mag = std::exp(-s.real() * lg);
    const long double ang = -s.imag() * lg;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

// Euler-Maclaurin tail for sum_{j>=0} (j+a)^{-s}:
//   sum_{j<M} (j+a)^{-s} + w^{1-s}/(s-1) + w^{-s}/2
//   + sum_i B_{2i}/(2i)! * s(s+1)...(s+2i-2) * w^{-s-2i+1},  w = M+a
inline cplx hurwitz_em(cplx s, double a, int M, int terms, double tol, uint64_t max_m) {
    const lcplx ls{s.real(), s.imag()};
    for (;;) {
        lcplx head{0.0L, 0.0L};
        for (int j = M - 1; j >= 0; --j) head += cpow_neg(static_cast<long double>(j) + a, ls);
        const long double w = static_cast<long double>(M) + a;
        const lcplx winv_s = cpow_neg(w, ls); // w^{-s}
        lcplx total = head + winv_s * (w / (ls - 1.0L) + 0.5L);

        lcplx poch = ls;                    // s(s+1)...(s+2i-2)
        lcplx wpow = winv_s / w;            // w^{-s-2i+1}
        long double fact = 2.0L;            // (2i)!
        long double last = 0.0L;
        for (int i = 1; i <= terms && i <= 12; ++i) {
            const long double coef =
                static_cast<long double>(kBernoulli[i - 1].num) /
                (static_cast<long double>(kBernoulli[i - 1].den) * fact);
            const lcplx term = poch * wpow * coef;
            total += term;
            last = std::abs(term);
            poch *= (ls + static_cast<long double>(2 * i - 1)) *
                    (ls + static_cast<long double>(2 * i));
            wpow /= w * w;
            fact *= static_cast<long double>(2 * i + 1) * static_cast<long double>(2 * i + 2);
        }
        if (last <= 0.1L * tol || static_cast<uint64_t>(M) * 2 > max_m)
            return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
        M *= 2;
    }
}

} // namespace detail

/// Hurwitz zeta sum_{j>=0} (j+a)^{-s} for Re(s) > 1, 0 < a <= 1.
inline cplx hurwitz_zeta(cplx s, double a, const EvalSettings& settings = {}) {
    require(std::isfinite(s.real()) && std::isfinite(s.imag()), "hurwitz_zeta: s must be finite");
    require(s.real() > 1.0, "hurwitz_zeta: requires Re(s) > 1");
    require(a > 0.0 && a <= 1.0, "hurwitz_zeta: requires 0 < a <= 1");
    require(settings.target_abs_tol > 0.0, "hurwitz_zeta: tolerance must be positive");
    const int M = static_cast<int>(
        std::min<uint64_t>(std::max<uint64_t>(64, 4 * static_cast<uint64_t>(std::fabs(s.imag()))),
                           std::max<uint64_t>(64, settings.series_cutoff)));
    return checked(detail::hurwitz_em(s, a, M, settings.euler_maclaurin_terms,
                                      settings.target_abs_tol, settings.series_cutoff),
                   "hurwitz_zeta");
}

/// Riemann zeta for Re(s) > 1.
inline cplx zeta(cplx s, const EvalSettings& settings = {}) {
    require(std::isfinite(s.real()) && std::isfinite(s.imag()), "zeta: s must be finite");
    require(s.real() > 1.0, "zeta: requires Re(s) > 1");
    return hurwitz_zeta(s, 1.0, settings);
}

/// Dirichlet L(chi, s) = k^{-s} sum_{a=1..k} chi(a) zeta(s, a/k) for Re(s) > 1.
/// Accuracy budget is k * target_abs_tol. The trivial character gives zeta.
inline cplx l_series(const DirichletCharacter& chi, cplx s, const EvalSettings& settings = {}) {
    require(s.real() > 1.0, "l_series: requires Re(s) > 1");
    const uint64_t k = chi.modulus;
    if (k == 1) return zeta(s, settings);
    detail::lcplx acc{0.0L, 0.0L};
    for (uint64_t a = 1; a <= k; ++a) {
        if (chi.exp_at(a) < 0) continue;
        const cplx h = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(k), settings);
        const cplx c = chi.eval(a);
        acc += detail::lcplx{c.real(), c.imag()} * detail::lcplx{h.real(), h.imag()};
    }
    const detail::lcplx scale = detail::cpow_neg(static_cast<long double>(k),
                                                 detail::lcplx{s.real(), s.imag()});
    acc *= scale;
    return checked({static_cast<double>(acc.real()), static_cast<double>(acc.imag())}, "l_series");
}

/// Partial Euler product prod_{p <= prime_bound} (1 + sign*chi(p)/p^s) in
/// ascending prime order. Note the exponent here is s, not the summand's s-1.
/// Primes dividing the modulus contribute factor 1 and are skipped outright.
inline cplx truncated_euler_product(const EulerLikeSpec& spec, uint64_t prime_bound) {
    require(prime_bound >= 2, "truncated_euler_product: prime_bound must be >= 2");
    require(prime_bound <= 100'000'000, "truncated_euler_product: prime_bound above 10^8");
    const auto primes = simple_primes(prime_bound);
    const long double sgn = spec.sign;
    detail::lcplx acc{1.0L, 0.0L};
    for (const uint32_t p : primes) {
        if (spec.chi.exp_at(p) < 0) continue; // chi(p) = 0 exactly
        const cplx c = spec.chi.eval(p);
        const detail::lcplx x = detail::cpow_neg(static_cast<long double>(p),
                                                 detail::lcplx{spec.s.real(), spec.s.imag()});
        acc *= detail::lcplx{1.0L, 0.0L} + sgn * detail::lcplx{c.real(), c.imag()} * x;
    }
    return checked({static_cast<double>(acc.real()), static_cast<double>(acc.imag())},
                   "truncated_euler_product");
}

/// Limit of the Cesaro mean of the spec's function:
///   sign=+  ->  L(chi, s) / L(chi^2, 2s)
///   sign=-  ->  1 / L(chi, s)
/// For k = 1 these reduce to zeta(s)/zeta(2s) and 1/zeta(s).
inline cplx predicted_limit(const EulerLikeSpec& spec, const EvalSettings& settings = {}) {
    const cplx ls = l_series(spec.chi, spec.s, settings);
    if (spec.sign < 0) return checked(1.0 / ls, "predicted_limit");
    const cplx l2 = l_series(char_square(spec.chi), 2.0 * spec.s, settings);
    return checked(ls / l2, "predicted_limit");
}

} // namespace eulermean
