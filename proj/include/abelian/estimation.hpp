#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "abelian/distribution.hpp"

namespace abelian {

/// Observed event sizes as a histogram. Sizes are >= 1, total >= 1.
class SizeDataset {
public:
    /// DomainError on sizes < 1 or an empty sample.
    static SizeDataset from_sizes(std::span<const std::int64_t> sizes);
    /// Zero counts are dropped; negative counts or sizes < 1 are DomainError.
    static SizeDataset from_counts(const std::map<std::int64_t, std::int64_t>& counts);

    const std::map<std::int64_t, std::int64_t>& counts() const noexcept { return counts_; }
    std::int64_t total() const noexcept { return total_; }
    std::int64_t max_size() const noexcept { return counts_.rbegin()->first; }

private:
    SizeDataset() = default;
    void validate();

    std::map<std::int64_t, std::int64_t> counts_;
    std::int64_t total_ = 0;
};

struct FitReport {
    double alpha_hat = 0.0;
    std::int64_t n_used = 0;
    bool n_estimated = false;
    /// Log-likelihood at (alpha_hat, n_used).
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    /// alpha_hat within 10 * kAlphaFloor of either end of the search range.
    bool at_boundary = false;
    /// 1 / sqrt(-d2 logL / d alpha2) at alpha_hat; NaN when the curvature
    /// is not negative (e.g. boundary fits).
    double alpha_std_error = 0.0;
};

/// Search range for alpha is [kAlphaFloor, 1 - kAlphaFloor].
inline constexpr double kAlphaFloor = 1e-9;
inline constexpr int kGuardGridPoints = 64;
inline constexpr int kMaxGoldenIterations = 200;

/// sum_L count(L) log P(L). DataError if a size exceeds N.
double log_likelihood(const AbelianParams& params, const SizeDataset& data);

/// Maximizes the likelihood over alpha with N fixed. A 64-point guard grid
/// picks the bracket, then golden-section search narrows it to tol.
FitReport fit_alpha(const SizeDataset& data, std::int64_t n, double tol = 1e-8);

/// Exhaustive search over integer N in [n_min, n_max] with fit_alpha inside.
/// Ties go to the smaller N. DomainError if n_min < max size or the grid is
/// empty.
FitReport fit_joint(const SizeDataset& data, std::int64_t n_min, std::int64_t n_max,
                    double tol = 1e-8);

} // namespace abelian
