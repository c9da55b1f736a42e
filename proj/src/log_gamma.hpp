#pragma once

#include <cmath>
#include <cstdint>

namespace abelian::detail {

// log(k!) in extended precision. Uses the reentrant glibc variant when
// available so concurrent callers do not race on signgam.
inline long double log_factorial(std::int64_t k) {
    const long double arg = static_cast<long double>(k) + 1.0L;
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgammal_r(arg, &sign);
#else
    return std::lgamma(arg);
#endif
}

inline long double log_binomial(std::int64_t n, std::int64_t k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

} // namespace abelian::detail
