#pragma once

// Abelian distribution on the support {1..N}:
//
//   P(L) = C * binom(N, L) * (L a / N)^(L-1) * (1 - L a / N)^(N-L-1)
//   C    = (1 - a) / (N - (N - 1) a)
//
// with 0 < a < 1. Everything is evaluated in log space; P(0) = 0.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace abelian {

/// Validated parameter pair (alpha, N).
class AbelianParams {
public:
    /// Throws DomainError unless 0 < alpha < 1 and n >= 1.
    AbelianParams(double alpha, std::int64_t n);

    double alpha() const noexcept { return alpha_; }
    std::int64_t n() const noexcept { return n_; }
    /// Per-element coupling alpha / N.
    double x() const noexcept { return alpha_ / static_cast<double>(n_); }

    friend bool operator==(const AbelianParams&, const AbelianParams&) = default;

private:
    double alpha_;
    std::int64_t n_;
};

inline constexpr std::size_t kDefaultMaxTableEntries = 1'000'000;

double norm_const(const AbelianParams& params);

/// log P(L). Returns -inf for L == 0; throws DomainError for L < 0 or L > N.
double log_pmf(const AbelianParams& params, std::int64_t size);

/// Extended-precision variant used where sums of many terms must stay
/// accurate to ~1e-15.
long double log_pmf_extended(const AbelianParams& params, std::int64_t size);

double pmf(const AbelianParams& params, std::int64_t size);

/// Closed-form mean N / (N - (N - 1) alpha).
double mean_closed_form(const AbelianParams& params);

/// Precomputed log-PMF and CDF over {1..N}. Immutable.
class LogProbTable {
public:
    const AbelianParams& params() const noexcept { return params_; }
    std::int64_t n() const noexcept { return params_.n(); }

    /// Indexed by L - 1.
    std::span<const double> log_pmf() const noexcept { return log_pmf_; }
    /// cdf()[L - 1] = P(X <= L); last entry is exactly 1.
    std::span<const double> cdf() const noexcept { return cdf_; }

    double log_pmf_at(std::int64_t size) const;
    double pmf_at(std::int64_t size) const;

private:
    friend LogProbTable build_table(const AbelianParams&, std::size_t);

    explicit LogProbTable(const AbelianParams& params) : params_(params) {}

    AbelianParams params_;
    std::vector<double> log_pmf_;
    std::vector<double> cdf_;
};

/// Throws CapacityError if N exceeds max_entries.
LogProbTable build_table(const AbelianParams& params,
                         std::size_t max_entries = kDefaultMaxTableEntries);

/// P(X <= size). 0 for size == 0, 1 for size >= N; DomainError for size < 0.
double cdf(const LogProbTable& table, std::int64_t size);

/// Smallest L with cdf(L) >= u. DomainError unless 0 <= u <= 1.
std::int64_t quantile(const LogProbTable& table, double u);

/// Raw moment sum_L L^k P(L), k >= 1.
double moment(const LogProbTable& table, int k);

} // namespace abelian
