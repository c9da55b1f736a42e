#include "abelian/criticality.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "abelian/errors.hpp"

namespace abelian {

namespace {

constexpr double kBracketLo = 1e-9;
constexpr double kBracketHi = 1.0 - 1e-9;

void require_min_n(std::int64_t n, std::int64_t minimum) {
    if (n < minimum) {
        std::ostringstream os;
        os << "N >= " << minimum << " required, got N=" << n;
        throw DomainError(os.str());
    }
}

} // namespace

std::vector<double> log_pmf_vector(const AbelianParams& params) {
    std::vector<double> out(static_cast<std::size_t>(params.n()));
    for (std::int64_t size = 1; size <= params.n(); ++size) {
        out[static_cast<std::size_t>(size - 1)] = log_pmf(params, size);
    }
    return out;
}

bool is_monotone_decreasing(const AbelianParams& params) {
    require_min_n(params.n(), 2);
    long double previous = log_pmf_extended(params, 1);
    for (std::int64_t size = 2; size <= params.n(); ++size) {
        const long double current = log_pmf_extended(params, size);
        if (!(current - previous < -kMonotoneTieBand)) return false;
        previous = current;
    }
    return true;
}

double alpha_crit(std::int64_t n, double tol) {
    require_min_n(n, 2);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    double lo = kBracketLo;
    double hi = kBracketHi;
    const bool lo_ok = is_monotone_decreasing(AbelianParams(lo, n));
    const bool hi_ok = is_monotone_decreasing(AbelianParams(hi, n));
    if (!lo_ok || hi_ok) {
        std::ostringstream os;
        os << "monotonicity predicate does not switch over the bracket for N=" << n
           << ": monotone(" << lo << ")=" << lo_ok << ", monotone(" << hi << ")=" << hi_ok;
        throw BracketError(os.str(), lo, hi);
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (is_monotone_decreasing(AbelianParams(mid, n))) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> log_log_curvature(std::span<const double> log_pmf) {
    if (log_pmf.size() < 3) throw DomainError("curvature needs at least three support points");
    std::vector<double> out;
    out.reserve(log_pmf.size() - 2);
    for (std::size_t i = 1; i + 1 < log_pmf.size(); ++i) {
        // i indexes L = i + 1.
        const long double x0 = std::log(static_cast<long double>(i));
        const long double x1 = std::log(static_cast<long double>(i + 1));
        const long double x2 = std::log(static_cast<long double>(i + 2));
        const long double h_minus = x1 - x0;
        const long double h_plus = x2 - x1;
        const long double slope_minus = (static_cast<long double>(log_pmf[i]) - log_pmf[i - 1]) / h_minus;
        const long double slope_plus = (static_cast<long double>(log_pmf[i + 1]) - log_pmf[i]) / h_plus;
        out.push_back(static_cast<double>(2.0L * (slope_plus - slope_minus) / (h_minus + h_plus)));
    }
    return out;
}

std::vector<double> log_log_curvature(const AbelianParams& params) {
    require_min_n(params.n(), 3);
    return log_log_curvature(log_pmf_vector(params));
}

bool has_sign_change(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0.0) return true;
        if (i > 0 && std::signbit(values[i]) != std::signbit(values[i - 1])) return true;
    }
    return false;
}

std::optional<AlphaInterval> critical_region(std::int64_t n, double step) {
    require_min_n(n, 3);
    if (!(step > 0.0 && step < 1.0)) throw DomainError("alpha grid step must lie in (0,1)");
    std::optional<AlphaInterval> region;
    for (std::int64_t k = 1;; ++k) {
        const double alpha = static_cast<double>(k) * step;
        if (alpha >= 1.0) break;
        if (!has_sign_change(log_log_curvature(AbelianParams(alpha, n)))) continue;
        if (!region) {
            region = AlphaInterval{alpha, alpha};
        } else {
            region->hi = alpha;
        }
    }
    return region;
}

double tail_exponent(std::span<const double> log_pmf, std::int64_t l_min, std::int64_t l_max) {
    const auto n = static_cast<std::int64_t>(log_pmf.size());
    if (l_min < 1 || l_max > n || l_min >= l_max) {
        std::ostringstream os;
        os << "tail window [" << l_min << ", " << l_max << "] invalid for N=" << n;
        throw DomainError(os.str());
    }
    if (l_max - l_min + 1 < 3) throw DomainError("tail window needs at least three points");

    const auto count = static_cast<long double>(l_max - l_min + 1);
    long double mean_x = 0.0L, mean_y = 0.0L;
    for (auto size = l_min; size <= l_max; ++size) {
        mean_x += std::log(static_cast<long double>(size));
        mean_y += log_pmf[static_cast<std::size_t>(size - 1)];
    }
    mean_x /= count;
    mean_y /= count;
    long double sxy = 0.0L, sxx = 0.0L;
    for (auto size = l_min; size <= l_max; ++size) {
        const long double dx = std::log(static_cast<long double>(size)) - mean_x;
        sxy += dx * (log_pmf[static_cast<std::size_t>(size - 1)] - mean_y);
        sxx += dx * dx;
    }
    return static_cast<double>(sxy / sxx);
}

double tail_exponent(const AbelianParams& params, std::int64_t l_min, std::int64_t l_max) {
    if (l_min < 1 || l_max > params.n() || l_min >= l_max) {
        std::ostringstream os;
        os << "tail window [" << l_min << ", " << l_max << "] invalid for N=" << params.n();
        throw DomainError(os.str());
    }
    // Only the window is evaluated; N may be far larger than the table cap.
    std::vector<double> window(static_cast<std::size_t>(l_max));
    for (auto size = l_min; size <= l_max; ++size) {
        window[static_cast<std::size_t>(size - 1)] = log_pmf(params, size);
    }
    return tail_exponent(window, l_min, l_max);
}

TailWindow default_tail_window(std::int64_t n) {
    const double nn = static_cast<double>(n);
    const auto lo = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(std::pow(nn, 0.1))));
    const auto hi = static_cast<std::int64_t>(std::floor(std::sqrt(nn)));
    return {lo, hi};
}

std::vector<ScalingRow> alpha_crit_scaling(std::span<const std::int64_t> ns, double tol) {
    std::vector<ScalingRow> rows;
    rows.reserve(ns.size());
    for (auto n : ns) {
        const double crit = alpha_crit(n, tol);
        const double reference = 1.0 - 1.0 / std::sqrt(static_cast<double>(n));
        rows.push_back({n, crit, reference, crit - reference});
    }
    return rows;
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
    case Regime::Subcritical: return "subcritical";
    case Regime::CriticalRegion: return "critical-region";
    case Regime::Supercritical: return "supercritical";
    }
    return "unknown";
}

Regime CriticalityReport::regime(double alpha) const noexcept {
    if (a_region && a_region->contains(alpha)) return Regime::CriticalRegion;
    return alpha < alpha_crit ? Regime::Subcritical : Regime::Supercritical;
}

CriticalityReport analyze_criticality(std::int64_t n, double tol, double step) {
    require_min_n(n, 2);
    CriticalityReport report;
    report.n = n;
    report.alpha_crit = alpha_crit(n, tol);
    if (n >= 3) report.a_region = critical_region(n, step);
    report.alpha_crit_in_region = report.a_region && report.a_region->contains(report.alpha_crit);
    report.tail_window = default_tail_window(n);
    if (report.tail_window.l_max - report.tail_window.l_min + 1 >= 3) {
        report.tail_exponent = tail_exponent(AbelianParams(report.alpha_crit, n),
                                             report.tail_window.l_min, report.tail_window.l_max);
    } else {
        report.tail_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

} // namespace abelian
