#pragma once

// Test-only reference computations. Nothing here goes through the
// log-gamma path used by the library.

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace oracle {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Direct product evaluation of the Abelian PMF in 50-digit arithmetic.
inline HighPrecision direct_pmf(double alpha_in, std::int64_t n, std::int64_t size) {
    const HighPrecision alpha(alpha_in);
    const HighPrecision nn(n);
    HighPrecision binom = 1;
    for (std::int64_t j = 1; j <= size; ++j) binom = binom * HighPrecision(n - size + j) / HighPrecision(j);
    const HighPrecision c = (1 - alpha) / (nn - (nn - 1) * alpha);
    const HighPrecision p = HighPrecision(size) * alpha / nn;
    HighPrecision result = c * binom * boost::multiprecision::pow(p, static_cast<int>(size - 1));
    const std::int64_t tail_exp = n - size - 1;
    if (tail_exp >= 0) {
        result *= boost::multiprecision::pow(1 - p, static_cast<int>(tail_exp));
    } else {
        result /= 1 - p;
    }
    return result;
}

/// Neumaier-compensated sum in long double.
inline long double compensated_sum(std::span<const double> values) {
    long double sum = 0.0L, comp = 0.0L;
    for (double v : values) {
        const long double t = sum + v;
        if (std::fabs(sum) >= std::fabs(static_cast<long double>(v))) {
            comp += (sum - t) + v;
        } else {
            comp += (static_cast<long double>(v) - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

/// sup_L |F_emp(L) - F(L)| over the support, cdf[i] = F(i + 1).
inline double ks_statistic(std::span<const std::int64_t> draws, std::span<const double> cdf) {
    std::vector<std::int64_t> counts(cdf.size() + 1, 0);
    for (auto d : draws) ++counts[static_cast<std::size_t>(d)];
    double worst = 0.0;
    std::int64_t running = 0;
    for (std::size_t size = 1; size <= cdf.size(); ++size) {
        running += counts[size];
        const double emp = static_cast<double>(running) / static_cast<double>(draws.size());
        worst = std::max(worst, std::fabs(emp - cdf[size - 1]));
    }
    return worst;
}

/// Asymptotic Kolmogorov 1% critical value; conservative for discrete laws.
inline double ks_critical_1pct(std::size_t sample_size) {
    return 1.6276 / std::sqrt(static_cast<double>(sample_size));
}

/// Two-sample chi-square homogeneity test; bins with fewer than 10 pooled
/// observations are merged into their neighbour. Returns the p-value.
inline double chi_square_two_sample_p(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    std::map<std::int64_t, std::pair<double, double>> bins;
    for (auto v : a) bins[v].first += 1;
    for (auto v : b) bins[v].second += 1;
    std::vector<std::pair<double, double>> merged;
    std::pair<double, double> pending{0, 0};
    for (const auto& [size, c] : bins) {
        pending.first += c.first;
        pending.second += c.second;
        if (pending.first + pending.second >= 10) {
            merged.push_back(pending);
            pending = {0, 0};
        }
    }
    if (pending.first + pending.second > 0) {
        if (merged.empty()) merged.push_back(pending);
        else {
            merged.back().first += pending.first;
            merged.back().second += pending.second;
        }
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double stat = 0.0;
    for (const auto& [ca, cb] : merged) {
        const double pooled = ca + cb;
        const double ea = pooled * na / (na + nb);
        const double eb = pooled * nb / (na + nb);
        stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    }
    const double dof = static_cast<double>(merged.size()) - 1.0;
    if (dof < 1) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

} // namespace oracle
