#pragma once

// Finite-size criticality measures for the Abelian distribution.
//
// Discretization conventions:
//   d log P / dL          forward difference log P(L+1) - log P(L)
//   d2 log P / d(log L)2  three-point stencil on the nonuniform abscissae
//                         log(L-1), log L, log(L+1), for L in {2..N-1}

#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <string_view>
#include <vector>

#include "abelian/distribution.hpp"
#include "abelian/errors.hpp"

namespace abelian {

/// Forward differences above this value count as non-decreasing.
inline constexpr double kMonotoneTieBand = 1e-14;

/// Thrown by alpha_crit when the predicate is not true at the lower and
/// false at the upper bracket end.
class BracketError : public DomainError {
public:
    BracketError(const std::string& what, double lo, double hi)
        : DomainError(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// log P(L) for L = 1..N, without the table capacity limit.
std::vector<double> log_pmf_vector(const AbelianParams& params);

/// True iff log P(L+1) - log P(L) < -kMonotoneTieBand for all L < N.
/// DomainError for N < 2.
bool is_monotone_decreasing(const AbelianParams& params);

/// Supremum of alpha for which the PMF is strictly decreasing, by bisection
/// over [1e-9, 1 - 1e-9] to width tol.
double alpha_crit(std::int64_t n, double tol = 1e-10);

/// Second derivative of log P with respect to log L at L = 2..N-1, given
/// log P(1..N) (index i holds L = i + 1).
std::vector<double> log_log_curvature(std::span<const double> log_pmf);
std::vector<double> log_log_curvature(const AbelianParams& params);

/// True iff the sequence has an exact zero or two consecutive entries of
/// opposite sign.
bool has_sign_change(std::span<const double> values);

struct AlphaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double alpha) const noexcept { return lo <= alpha && alpha <= hi; }
};

/// Smallest interval covering every grid alpha = k * step (0 < alpha < 1)
/// whose curvature array changes sign; nullopt if there are none.
std::optional<AlphaInterval> critical_region(std::int64_t n, double step = 1e-3);

/// Least-squares slope of log P(L) against log L over [l_min, l_max].
/// DomainError with fewer than 3 points or bounds outside the support.
double tail_exponent(std::span<const double> log_pmf, std::int64_t l_min, std::int64_t l_max);
double tail_exponent(const AbelianParams& params, std::int64_t l_min, std::int64_t l_max);

struct TailWindow {
    std::int64_t l_min;
    std::int64_t l_max;
};
/// [max(2, ceil(N^0.1)), floor(N^0.5)]; may hold fewer than 3 points.
TailWindow default_tail_window(std::int64_t n);

struct ScalingRow {
    std::int64_t n;
    double alpha_crit;
    double reference;   // 1 - 1/sqrt(n)
    double difference;  // alpha_crit - reference
};

std::vector<ScalingRow> alpha_crit_scaling(std::span<const std::int64_t> ns, double tol = 1e-10);

enum class Regime { Subcritical, CriticalRegion, Supercritical };
std::string_view to_string(Regime regime) noexcept;

struct CriticalityReport {
    std::int64_t n = 0;
    double alpha_crit = 0.0;
    std::optional<AlphaInterval> a_region;
    bool alpha_crit_in_region = false;
    /// Slope over the default tail window at alpha_crit; NaN if the window
    /// holds fewer than 3 points.
    double tail_exponent = 0.0;
    TailWindow tail_window{};

    Regime regime(double alpha) const noexcept;
};

/// N >= 2. For N = 2 the curvature is undefined and a_region is empty.
CriticalityReport analyze_criticality(std::int64_t n, double tol = 1e-10, double step = 1e-3);

} // namespace abelian
