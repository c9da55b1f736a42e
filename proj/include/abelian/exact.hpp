#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace abelian {

using BigInteger = boost::multiprecision::cpp_int;
/// Always kept in lowest terms with a positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;

/// binom(top, k) for any integer top (negative allowed) and k >= 0;
/// zero for k < 0. binom(-1, m) = (-1)^m.
BigInteger generalized_binomial(std::int64_t top, std::int64_t k);

/// base^exponent for any integer exponent; DomainError on 0^negative.
ExactRational rational_pow(const ExactRational& base, std::int64_t exponent);

} // namespace abelian
