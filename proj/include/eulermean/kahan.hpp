#pragma once

#include <cmath>
#include <cstdint>

#include "eulermean/common.hpp"

namespace eulermean {

/// Neumaier-compensated accumulator. The running error term is carried
/// separately and only folded in by value(), so states can be merged
/// deterministically: merge(b) == add(b.sum), add(b.comp).
struct KahanReal {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    void merge(const KahanReal& o) {
        add(o.sum);
        add(o.comp);
    }
    double value() const { return sum + comp; }
};

struct KahanComplex {
    KahanReal re, im;

    void add(cplx x) {
        re.add(x.real());
        im.add(x.imag());
    }
    void merge(const KahanComplex& o) {
        re.merge(o.re);
        im.merge(o.im);
    }
    cplx value() const { return {re.value(), im.value()}; }
};

template <class T> struct kahan_for;
template <> struct kahan_for<double> { using type = KahanReal; };
template <> struct kahan_for<cplx> { using type = KahanComplex; };
template <class T> using kahan_for_t = typename kahan_for<T>::type;

} // namespace eulermean
