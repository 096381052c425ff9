#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "eulermean/common.hpp"
#include "eulermean/kahan.hpp"
#include "eulermean/numtheory.hpp"
#include "eulermean/special.hpp"

namespace eulermean {

inline constexpr uint64_t kDefaultSegmentSize = uint64_t{1} << 20;

namespace detail {

// n^{-(s-1)} and the per-prime factor 1 + sign*chi(n)/n^{s-1}, in the
// arithmetic the engine runs in. Small integer exponents avoid pow().
inline double power_term(double sm1, uint64_t n) {
    const double x = static_cast<double>(n);
    if (sm1 == 1.0) return 1.0 / x;
    if (sm1 == 2.0) return 1.0 / (x * x);
    if (sm1 == 3.0) return 1.0 / (x * x * x);
    return std::pow(x, -sm1);
}

inline cplx power_term(cplx sm1, uint64_t n) {
    const double lg = std::log(static_cast<double>(n));
    const double mag = std::exp(-sm1.real() * lg);
    const double ang = -sm1.imag() * lg;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

// false when chi(n) = 0: the factor is exactly 1 and must be skipped
inline bool spec_factor(const EulerLikeSpec& spec, uint64_t n, double& out) {
    if (spec.chi.exp_at(n) < 0) return false;
    const double c = spec.chi.eval(n).real();
    out = 1.0 + spec.sign * c * power_term(spec.s.real() - 1.0, n);
    return true;
}

inline bool spec_factor(const EulerLikeSpec& spec, uint64_t n, cplx& out) {
    if (spec.chi.exp_at(n) < 0) return false;
    const cplx c = spec.chi.eval(n);
    out = 1.0 + static_cast<double>(spec.sign) * c * power_term(spec.s - 1.0, n);
    return true;
}

template <class T>
struct PrimeFactorTable {
    std::vector<T> factor;
    std::vector<uint8_t> use;

    PrimeFactorTable(const EulerLikeSpec& spec, std::span<const uint32_t> primes) {
        factor.assign(primes.size(), T(1));
        use.assign(primes.size(), 0);
        for (size_t i = 0; i < primes.size(); ++i)
            if (spec_factor(spec, primes[i], factor[i])) use[i] = 1;
    }
};

/// f(m) for every m in [lo, hi): slots start at 1 and pick up one factor per
/// distinct prime; prime powers are divided out of the residual so each prime
/// contributes once; a leftover prime > sqrt(hi-1) gets its factor on the fly.
template <class T>
void fill_f_segment(const EulerLikeSpec& spec, uint64_t lo, uint64_t hi,
                    std::span<const uint32_t> primes, const PrimeFactorTable<T>& pf,
                    std::vector<uint64_t>& residual, std::vector<T>& out) {
    out.assign(static_cast<size_t>(hi - lo), T(1));
    scan_block(
        lo, hi, primes, residual,
        [&](size_t off, size_t pidx, uint32_t) {
            if (pf.use[pidx]) out[off] *= pf.factor[pidx];
        },
        [&](size_t off, uint64_t r) {
            T f;
            if (spec_factor(spec, r, f)) out[off] *= f;
        });
}

} // namespace detail

/// The sieve route: f(lo), ..., f(hi-1) for the spec, given all primes up to
/// at least sqrt(hi-1). Runs in real arithmetic when the spec allows it.
inline std::vector<cplx> f_values_segment(const EulerLikeSpec& spec, uint64_t lo, uint64_t hi,
                                          std::span<const uint32_t> primes) {
    require(lo >= 1 && lo < hi, "f_values_segment: need 1 <= lo < hi");
    require(std::is_sorted(primes.begin(), primes.end()),
            "f_values_segment: prime list must be ascending");
    std::vector<uint64_t> residual;
    std::vector<cplx> out;
    if (spec.real_arithmetic()) {
        detail::PrimeFactorTable<double> pf(spec, primes);
        std::vector<double> f;
        detail::fill_f_segment(spec, lo, hi, primes, pf, residual, f);
        out.reserve(f.size());
        for (double v : f) out.emplace_back(v, 0.0);
    } else {
        detail::PrimeFactorTable<cplx> pf(spec, primes);
        detail::fill_f_segment(spec, lo, hi, primes, pf, residual, out);
    }
    return out;
}

/// The slow independent route: f(m) as the squarefree-divisor sum
/// sum_{k | m, k squarefree} sign^omega(k) chi(k) / k^{s-1}. Equals the
/// product form by distributivity; kept separate from the sieve path.
inline cplx f_value_oracle(const EulerLikeSpec& spec, uint64_t m) {
    require(m >= 1 && m <= 1'000'000, "f_value_oracle: m outside supported range [1, 10^6]");
    cplx acc{0.0, 0.0};
    for (const auto& d : squarefree_divisors(m)) {
        if (spec.chi.exp_at(d.k) < 0) continue;
        const double sgn = (spec.sign < 0 && (d.omega & 1)) ? -1.0 : 1.0;
        acc += sgn * spec.chi.eval(d.k) * detail::power_term(spec.s - 1.0, d.k);
    }
    return acc;
}

/// Compensated segment accumulator; merged across segments in a fixed order
/// so results do not depend on the worker count.
template <class T>
struct Accumulator {
    kahan_for_t<T> state;
    uint64_t count = 0;

    void add(T x) {
        state.add(x);
        ++count;
    }
    void merge(const Accumulator& o) {
        state.merge(o.state);
        count += o.count;
    }
    T value() const { return state.value(); }
};

struct CesaroReport {
    EulerLikeSpec spec;
    uint64_t n_terms = 0;
    uint64_t segment_size = kDefaultSegmentSize;
    uint32_t workers = 1;
    std::vector<std::pair<uint64_t, cplx>> checkpoints; // ascending n, running mean
    cplx final_mean{0.0, 0.0};
    cplx predicted{0.0, 0.0};
    double abs_error = 0.0;
    double elapsed_seconds = 0.0;
};

inline std::vector<uint64_t> default_checkpoints(uint64_t n) {
    std::vector<uint64_t> cs;
    for (uint64_t c = 1; c < n && c <= n / 10 * 10; c *= 10) cs.push_back(c);
    if (cs.empty() || cs.back() != n) cs.push_back(n);
    return cs;
}

namespace detail {

template <class T>
void run_mean(const EulerLikeSpec& spec, uint64_t n_terms,
              const std::vector<uint64_t>& schedule, uint64_t segment_size, uint32_t workers,
              std::vector<std::pair<uint64_t, cplx>>& checkpoints, cplx& final_mean) {
    const auto primes = simple_primes(isqrt(n_terms));
    const PrimeFactorTable<T> pf(spec, primes);
    const uint64_t nseg = (n_terms + segment_size - 1) / segment_size;

    struct SegResult {
        Accumulator<T> acc;
        std::vector<std::pair<size_t, Accumulator<T>>> partials;
    };
    std::vector<SegResult> results(nseg);
    std::atomic<uint64_t> next{0};
    std::mutex fail_mutex;
    std::string fail_what;

    auto work = [&] {
        std::vector<uint64_t> residual;
        std::vector<T> f;
        for (;;) {
            const uint64_t i = next.fetch_add(1);
            if (i >= nseg) break;
            const uint64_t lo = 1 + i * segment_size;
            const uint64_t hi = std::min(n_terms + 1, lo + segment_size);
            try {
                fill_f_segment(spec, lo, hi, primes, pf, residual, f);
            } catch (const std::bad_alloc&) {
                std::lock_guard lk(fail_mutex);
                if (fail_what.empty())
                    fail_what = "cesaro_mean: buffer allocation failed in segment [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + ")";
                break;
            } catch (const std::exception& e) {
                std::lock_guard lk(fail_mutex);
                if (fail_what.empty())
                    fail_what = "cesaro_mean: segment [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + ") failed: " + e.what();
                break;
            }
            SegResult res;
            size_t ck = static_cast<size_t>(
                std::lower_bound(schedule.begin(), schedule.end(), lo) - schedule.begin());
            for (uint64_t m = lo; m < hi; ++m) {
                res.acc.add(f[m - lo]);
                if (ck < schedule.size() && schedule[ck] == m) {
                    res.partials.emplace_back(ck, res.acc);
                    ++ck;
                }
            }
            results[i] = std::move(res);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (uint32_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (!fail_what.empty()) throw resource_error(fail_what);

    // single-threaded reduction in ascending segment order: bit-identical
    // means for any worker count
    Accumulator<T> total;
    checkpoints.clear();
    checkpoints.reserve(schedule.size());
    for (uint64_t i = 0; i < nseg; ++i) {
        for (const auto& [ck, st] : results[i].partials) {
            Accumulator<T> upto = total;
            upto.merge(st);
            const T mean = upto.value() / static_cast<double>(schedule[ck]);
            checkpoints.emplace_back(schedule[ck], cplx(mean));
        }
        total.merge(results[i].acc);
    }
    final_mean = checkpoints.back().second;
}

} // namespace detail

/// Cesaro mean (1/N) sum_{m<=N} f(m) by segmented sieving. Segment boundaries
/// depend only on segment_size, summation within a segment is in ascending m,
/// and segments reduce in ascending order, so the result is bit-identical for
/// any worker count.
inline CesaroReport cesaro_mean(const EulerLikeSpec& spec, uint64_t n_terms,
                                std::vector<uint64_t> checkpoint_schedule = {},
                                uint64_t segment_size = kDefaultSegmentSize,
                                uint32_t workers = 1,
                                const EvalSettings& settings = {}) {
    require(n_terms >= 1, "cesaro_mean: N must be >= 1");
    require(segment_size >= 1000, "cesaro_mean: segment_size must be >= 1000");
    require(workers >= 1, "cesaro_mean: workers must be >= 1");
    if (checkpoint_schedule.empty()) checkpoint_schedule = default_checkpoints(n_terms);
    for (size_t i = 0; i < checkpoint_schedule.size(); ++i) {
        const bool ordered = i == 0 || checkpoint_schedule[i - 1] < checkpoint_schedule[i];
        require(checkpoint_schedule[i] >= 1 && checkpoint_schedule[i] <= n_terms && ordered,
                "cesaro_mean: checkpoint schedule must be strictly ascending within [1, N]");
    }
    if (checkpoint_schedule.back() != n_terms) checkpoint_schedule.push_back(n_terms);

    const auto t0 = std::chrono::steady_clock::now();
    CesaroReport rep{spec};
    rep.n_terms = n_terms;
    rep.segment_size = segment_size;
    rep.workers = workers;
    if (spec.real_arithmetic())
        detail::run_mean<double>(spec, n_terms, checkpoint_schedule, segment_size, workers,
                                 rep.checkpoints, rep.final_mean);
    else
        detail::run_mean<cplx>(spec, n_terms, checkpoint_schedule, segment_size, workers,
                               rep.checkpoints, rep.final_mean);
    rep.predicted = predicted_limit(spec, settings);
    rep.abs_error = std::abs(rep.final_mean - rep.predicted);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct ConvergencePoint {
    uint64_t n_terms = 0;
    double abs_error = 0.0;
};

struct ConvergenceProbe {
    std::vector<ConvergencePoint> points;
    double fitted_slope = 0.0; // least-squares slope of log(err) vs log(N)
};

/// Empirical convergence of the mean toward the predicted limit. The fitted
/// slope is reported as measured; no rate is asserted.
inline ConvergenceProbe convergence_probe(const EulerLikeSpec& spec,
                                          const std::vector<uint64_t>& n_values,
                                          uint64_t segment_size = kDefaultSegmentSize,
                                          uint32_t workers = 1) {
    require(!n_values.empty(), "convergence_probe: need at least one N");
    for (size_t i = 1; i < n_values.size(); ++i)
        require(n_values[i - 1] < n_values[i], "convergence_probe: N values must ascend");

    const CesaroReport rep =
        cesaro_mean(spec, n_values.back(), n_values, segment_size, workers);
    ConvergenceProbe probe;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t used = 0;
    for (const auto& [n, mean] : rep.checkpoints) {
        if (!std::binary_search(n_values.begin(), n_values.end(), n)) continue;
        const double err = std::abs(mean - rep.predicted);
        probe.points.push_back({n, err});
        if (err > 0.0) {
            const double x = std::log(static_cast<double>(n));
            const double y = std::log(err);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++used;
        }
    }
    if (used >= 2) {
        const double denom = used * sxx - sx * sx;
        if (denom != 0.0) probe.fitted_slope = (used * sxy - sx * sy) / denom;
    }
    return probe;
}

} // namespace eulermean
