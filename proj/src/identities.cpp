#include "abelian/identities.hpp"

#include <random>
#include <sstream>

#include "abelian/errors.hpp"

namespace abelian {

BigInteger generalized_binomial(std::int64_t top, std::int64_t k) {
    if (k < 0) return 0;
    BigInteger num = 1;
    BigInteger den = 1;
    for (std::int64_t j = 0; j < k; ++j) {
        num *= top - j;
        den *= j + 1;
    }
    return num / den;
}

ExactRational rational_pow(const ExactRational& base, std::int64_t exponent) {
    if (exponent < 0) {
        if (base == 0) throw DomainError("zero raised to a negative power");
        return rational_pow(1 / base, -exponent);
    }
    ExactRational result = 1;
    ExactRational factor = base;
    for (auto e = exponent; e > 0; e >>= 1) {
        if (e & 1) result *= factor;
        factor *= factor;
    }
    return result;
}

namespace {

BigInteger ipow(const BigInteger& base, std::int64_t exponent) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

int sign_of_power(std::int64_t exponent) { return exponent % 2 == 0 ? 1 : -1; }

void require_nonnegative_i(std::int64_t i, std::int64_t n) {
    if (i < 0) throw DomainError("coefficient index i must be >= 0");
    if (n < 1) throw DomainError("N must be >= 1");
}

void require_x_range(std::int64_t n, const ExactRational& x) {
    if (n < 1) throw DomainError("N must be >= 1");
    if (!(x > 0 && x * n < 1)) {
        std::ostringstream os;
        os << "x=" << x << " must satisfy 0 < x < 1/N for N=" << n;
        throw DomainError(os.str());
    }
}

} // namespace

BigInteger lemma_coefficient(std::int64_t i, std::int64_t n) {
    require_nonnegative_i(i, n);
    // x^i collects (Lx)^(L-1) * (-Lx)^m from the binomial expansion of the
    // second factor, with m = i + 1 - L.
    BigInteger sum = 0;
    for (std::int64_t k = 1; k <= i + 1; ++k) {
        const std::int64_t m = i + 1 - k;
        sum += sign_of_power(m) * generalized_binomial(n, k) *
               generalized_binomial(n - k - 1, m) * ipow(BigInteger(k), i);
    }
    if (sum % n != 0) {
        std::ostringstream os;
        os << "coefficient sum " << sum << " not divisible by N=" << n;
        throw std::logic_error(os.str());
    }
    return sum / n;
}

BigInteger lemma_raw_sum(std::int64_t i, std::int64_t n) {
    require_nonnegative_i(i, n);
    BigInteger sum = 0;
    for (std::int64_t k = 0; k <= i; ++k) {
        sum += sign_of_power(i - k) * generalized_binomial(n, k) *
               generalized_binomial(n - k - 1, i - k) * ipow(BigInteger(k), i);
    }
    return sum;
}

BigInteger theorem_coefficient(std::int64_t i, std::int64_t n) {
    require_nonnegative_i(i, n);
    BigInteger sum = 0;
    for (std::int64_t k = 0; k <= i; ++k) {
        sum += sign_of_power(i - k) * generalized_binomial(n - 1, k) *
               generalized_binomial(n - k - 2, i - k) * ipow(BigInteger(k + 1), i);
    }
    return sum;
}

bool check_normalization_identity(std::int64_t n, const ExactRational& x) {
    require_x_range(n, x);
    ExactRational lhs = 0;
    for (std::int64_t size = 1; size <= n - 1; ++size) {
        lhs += ExactRational(generalized_binomial(n, size)) * rational_pow(size * x, size - 1) *
               rational_pow(1 - size * x, n - size - 1);
    }
    const ExactRational nx = n * x;
    const ExactRational geometric = 1 + x * (1 - rational_pow(nx, n - 2)) / (1 - nx);
    const ExactRational alpha = nx;
    const ExactRational inv_c = (n - (n - 1) * alpha) / (1 - alpha);
    const ExactRational shifted = inv_c - rational_pow(nx, n - 1) / (1 - nx);
    return lhs / n == geometric && lhs == shifted;
}

bool check_expectation_identity(std::int64_t n, const ExactRational& x) {
    require_x_range(n, x);
    ExactRational lhs = 0;
    for (std::int64_t size = 1; size <= n; ++size) {
        lhs += ExactRational(generalized_binomial(n - 1, size - 1)) *
               rational_pow(size * x, size - 1) * rational_pow(1 - size * x, n - size - 1);
    }
    return lhs == 1 / (1 - n * x);
}

ExactRational exact_pmf(std::int64_t n, const ExactRational& x, std::int64_t size) {
    require_x_range(n, x);
    if (size < 0 || size > n) throw DomainError("size outside [0, N]");
    if (size == 0) return 0;
    const ExactRational alpha = n * x;
    const ExactRational c = (1 - alpha) / (n - (n - 1) * alpha);
    return c * ExactRational(generalized_binomial(n, size)) * rational_pow(size * x, size - 1) *
           rational_pow(1 - size * x, n - size - 1);
}

ExactRational exact_pmf_sum(std::int64_t n, const ExactRational& x) {
    ExactRational total = 0;
    for (std::int64_t size = 1; size <= n; ++size) total += exact_pmf(n, x, size);
    return total;
}

namespace {

template <class Fn>
IdentityResult integer_grid(std::string name, const IdentitySuiteConfig& cfg, Fn&& check) {
    IdentityResult result;
    result.name = std::move(name);
    for (std::int64_t n = 1; n <= cfg.max_n; ++n) {
        for (std::int64_t i = 0; i <= cfg.max_i; ++i) {
            ++result.instances;
            auto failure = check(i, n);
            if (failure && result.passed) {
                result.passed = false;
                result.witness = std::move(*failure);
            }
        }
    }
    return result;
}

std::optional<std::string> mismatch(std::int64_t i, std::int64_t n, const BigInteger& got,
                                    const BigInteger& expected) {
    if (got == expected) return std::nullopt;
    std::ostringstream os;
    os << "i=" << i << " n=" << n << " got=" << got << " expected=" << expected;
    return os.str();
}

// Random rationals a / (N b) with 1 <= a < b, so 0 < x < 1/N.
std::vector<ExactRational> rational_points(std::int64_t n, int count, std::mt19937_64& rng) {
    std::vector<ExactRational> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p) {
        const std::int64_t b = 2 + static_cast<std::int64_t>(rng() % 999);
        const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(b - 1));
        out.emplace_back(a, n * b);
    }
    return out;
}

template <class Fn>
IdentityResult rational_grid(std::string name, const IdentitySuiteConfig& cfg, Fn&& check) {
    IdentityResult result;
    result.name = std::move(name);
    std::mt19937_64 rng(cfg.seed);
    for (std::int64_t n = 1; n <= cfg.max_rational_n; ++n) {
        for (const auto& x : rational_points(n, cfg.points_per_n, rng)) {
            ++result.instances;
            if (!check(n, x) && result.passed) {
                std::ostringstream os;
                os << "n=" << n << " x=" << x;
                result.passed = false;
                result.witness = os.str();
            }
        }
    }
    return result;
}

} // namespace

std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& config) {
    const auto offset = config.fault_offset;
    std::vector<IdentityResult> results;
    results.push_back(integer_grid("lemma_coefficient", config, [&](std::int64_t i, std::int64_t n) {
        const BigInteger expected = (i == 0 ? BigInteger(1) : ipow(BigInteger(n), i - 1)) + offset;
        return mismatch(i, n, lemma_coefficient(i, n), expected);
    }));
    results.push_back(integer_grid("theorem_coefficient", config, [&](std::int64_t i, std::int64_t n) {
        return mismatch(i, n, theorem_coefficient(i, n), ipow(BigInteger(n), i) + offset);
    }));
    results.push_back(rational_grid("normalization_identity", config, [&](std::int64_t n, const ExactRational& x) {
        return check_normalization_identity(n, x);
    }));
    results.push_back(rational_grid("expectation_identity", config, [&](std::int64_t n, const ExactRational& x) {
        return check_expectation_identity(n, x);
    }));
    return results;
}

} // namespace abelian
