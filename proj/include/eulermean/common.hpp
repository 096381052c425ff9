#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eulermean {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Thrown when an operation would exceed the configured memory budget or a
/// runtime resource (segment buffer, table) cannot be allocated.
class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// floor(sqrt(n)) without float edge cases near perfect squares
inline uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

// public operations must not leak NaN/Inf
inline cplx checked(cplx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::domain_error(std::string(what) + ": result is not finite");
    return v;
}

} // namespace eulermean
