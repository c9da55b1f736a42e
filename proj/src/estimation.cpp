#include "abelian/estimation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "abelian/errors.hpp"

namespace abelian {

SizeDataset SizeDataset::from_sizes(std::span<const std::int64_t> sizes) {
    SizeDataset data;
    for (auto size : sizes) {
        if (size < 1) {
            std::ostringstream os;
            os << "event size must be >= 1, got " << size;
            throw DomainError(os.str());
        }
        ++data.counts_[size];
    }
    data.validate();
    return data;
}

SizeDataset SizeDataset::from_counts(const std::map<std::int64_t, std::int64_t>& counts) {
    SizeDataset data;
    for (const auto& [size, count] : counts) {
        if (size < 1 || count < 0) {
            std::ostringstream os;
            os << "invalid histogram entry size=" << size << " count=" << count;
            throw DomainError(os.str());
        }
        if (count > 0) data.counts_[size] = count;
    }
    data.validate();
    return data;
}

void SizeDataset::validate() {
    total_ = 0;
    for (const auto& [size, count] : counts_) total_ += count;
    if (total_ < 1) throw DomainError("dataset contains no observations");
}

double log_likelihood(const AbelianParams& params, const SizeDataset& data) {
    if (data.max_size() > params.n()) {
        std::ostringstream os;
        os << "size exceeds N: observed " << data.max_size() << " > N=" << params.n();
        throw DataError(os.str());
    }
    long double acc = 0.0L;
    for (const auto& [size, count] : data.counts()) {
        acc += static_cast<long double>(count) * log_pmf_extended(params, size);
    }
    return static_cast<double>(acc);
}

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

double profile_std_error(const SizeDataset& data, std::int64_t n, double alpha) {
    const double h = std::min({1e-4, (alpha - kAlphaFloor) / 2, (1.0 - kAlphaFloor - alpha) / 2});
    if (!(h > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    auto ll = [&](double a) { return log_likelihood(AbelianParams(a, n), data); };
    const double second = (ll(alpha + h) - 2.0 * ll(alpha) + ll(alpha - h)) / (h * h);
    if (!(second < 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 / std::sqrt(-second);
}

} // namespace

FitReport fit_alpha(const SizeDataset& data, std::int64_t n, double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (n < 1) throw DomainError("N must be >= 1");
    if (data.max_size() > n) {
        std::ostringstream os;
        os << "size exceeds N: observed " << data.max_size() << " > N=" << n;
        throw DataError(os.str());
    }

    auto objective = [&](double a) { return log_likelihood(AbelianParams(a, n), data); };

    const double lo = kAlphaFloor;
    const double hi = 1.0 - kAlphaFloor;
    std::array<double, kGuardGridPoints> grid{};
    std::array<double, kGuardGridPoints> values{};
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kGuardGridPoints - 1);
        values[i] = objective(grid[i]);
        if (values[i] > values[best]) best = i;
    }

    double left = grid[best == 0 ? 0 : best - 1];
    double right = grid[best + 1 == grid.size() ? best : best + 1];

    double best_alpha = grid[best];
    double best_value = values[best];
    auto consider = [&](double a, double v) {
        if (v > best_value) {
            best_value = v;
            best_alpha = a;
        }
    };

    double c = right - kInvPhi * (right - left);
    double d = left + kInvPhi * (right - left);
    double fc = objective(c);
    double fd = objective(d);
    int iterations = 0;
    while (right - left > tol && iterations < kMaxGoldenIterations) {
        ++iterations;
        if (fc >= fd) {
            right = d;
            d = c;
            fd = fc;
            c = right - kInvPhi * (right - left);
            fc = objective(c);
        } else {
            left = c;
            c = d;
            fc = fd;
            d = left + kInvPhi * (right - left);
            fd = objective(d);
        }
    }
    consider(c, fc);
    consider(d, fd);
    const double mid = 0.5 * (left + right);
    consider(mid, objective(mid));

    FitReport report;
    report.alpha_hat = best_alpha;
    report.n_used = n;
    report.n_estimated = false;
    report.log_likelihood = best_value;
    report.iterations = iterations;
    report.converged = right - left <= tol;
    report.at_boundary = best_alpha - lo < 10 * kAlphaFloor || hi - best_alpha < 10 * kAlphaFloor;
    report.alpha_std_error = profile_std_error(data, n, best_alpha);
    return report;
}

FitReport fit_joint(const SizeDataset& data, std::int64_t n_min, std::int64_t n_max, double tol) {
    if (n_min > n_max) {
        std::ostringstream os;
        os << "empty N grid [" << n_min << ", " << n_max << "]";
        throw DomainError(os.str());
    }
    if (n_min < data.max_size()) {
        std::ostringstream os;
        os << "n_min=" << n_min << " is below the largest observed size " << data.max_size();
        throw DomainError(os.str());
    }

    FitReport best;
    int total_iterations = 0;
    bool all_converged = true;
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        FitReport candidate = fit_alpha(data, n, tol);
        total_iterations += candidate.iterations;
        all_converged = all_converged && candidate.converged;
        if (n == n_min || candidate.log_likelihood > best.log_likelihood) best = candidate;
    }
    best.n_estimated = true;
    best.iterations = total_iterations;
    best.converged = all_converged;
    return best;
}

} // namespace abelian
