#include "abelian/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "abelian/errors.hpp"
#include "log_gamma.hpp"

namespace abelian {

namespace {

std::string describe_size(std::int64_t size, std::int64_t n) {
    std::ostringstream os;
    os << "size L=" << size << " outside [0, N=" << n << "]";
    return os.str();
}

} // namespace

AbelianParams::AbelianParams(double alpha, std::int64_t n) : alpha_(alpha), n_(n) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "alpha must lie in the open interval (0,1), got " << alpha;
        throw DomainError(os.str());
    }
    if (n < 1) {
        std::ostringstream os;
        os << "N must be >= 1, got " << n;
        throw DomainError(os.str());
    }
}

double norm_const(const AbelianParams& params) {
    const long double a = params.alpha();
    const long double n = static_cast<long double>(params.n());
    // N - (N-1)a rewritten as N(1-a) + a to keep it exact-ish near a -> 1.
    return static_cast<double>((1.0L - a) / (n * (1.0L - a) + a));
}

long double log_pmf_extended(const AbelianParams& params, std::int64_t size) {
    const std::int64_t n = params.n();
    if (size < 0 || size > n) throw DomainError(describe_size(size, n));
    if (size == 0) return -std::numeric_limits<long double>::infinity();

    const long double a = params.alpha();
    const long double nn = static_cast<long double>(n);
    const long double ll = static_cast<long double>(size);
    const long double log_c = std::log1p(-a) - std::log(nn * (1.0L - a) + a);

    const long double p = ll * a / nn;
    // (L a/N)^(L-1): exponent is zero at L = 1.
    const long double head = size == 1 ? 0.0L : (ll - 1.0L) * std::log(p);
    // (1 - L a/N)^(N-L-1): exponent is -1 at L = N.
    const long double tail = (nn - ll - 1.0L) * std::log1p(-p);

    return log_c + detail::log_binomial(n, size) + head + tail;
}

double log_pmf(const AbelianParams& params, std::int64_t size) {
    return static_cast<double>(log_pmf_extended(params, size));
}

double pmf(const AbelianParams& params, std::int64_t size) {
    return static_cast<double>(std::exp(log_pmf_extended(params, size)));
}

double mean_closed_form(const AbelianParams& params) {
    const long double a = params.alpha();
    const long double n = static_cast<long double>(params.n());
    return static_cast<double>(n / (n * (1.0L - a) + a));
}

LogProbTable build_table(const AbelianParams& params, std::size_t max_entries) {
    const std::int64_t n = params.n();
    if (static_cast<std::uint64_t>(n) > max_entries) {
        std::ostringstream os;
        os << "table for N=" << n << " exceeds capacity of " << max_entries << " entries";
        throw CapacityError(os.str());
    }

    LogProbTable table(params);
    std::vector<long double> lp(static_cast<std::size_t>(n));
    for (std::int64_t size = 1; size <= n; ++size) {
        lp[static_cast<std::size_t>(size - 1)] = log_pmf_extended(params, size);
    }

    table.log_pmf_.reserve(lp.size());
    for (long double v : lp) table.log_pmf_.push_back(static_cast<double>(v));

    const long double peak = *std::max_element(lp.begin(), lp.end());
    std::vector<long double> running(lp.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < lp.size(); ++i) {
        acc += std::exp(lp[i] - peak);
        running[i] = acc;
    }
    table.cdf_.resize(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) {
        table.cdf_[i] = std::clamp(static_cast<double>(running[i] / acc), 0.0, 1.0);
    }
    table.cdf_.back() = 1.0;
    return table;
}

double LogProbTable::log_pmf_at(std::int64_t size) const {
    if (size < 0 || size > n()) throw DomainError(describe_size(size, n()));
    if (size == 0) return -std::numeric_limits<double>::infinity();
    return log_pmf_[static_cast<std::size_t>(size - 1)];
}

double LogProbTable::pmf_at(std::int64_t size) const {
    return std::exp(log_pmf_at(size));
}

double cdf(const LogProbTable& table, std::int64_t size) {
    if (size < 0) throw DomainError(describe_size(size, table.n()));
    if (size == 0) return 0.0;
    if (size >= table.n()) return 1.0;
    return table.cdf()[static_cast<std::size_t>(size - 1)];
}

std::int64_t quantile(const LogProbTable& table, double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        std::ostringstream os;
        os << "quantile level must lie in [0,1], got " << u;
        throw DomainError(os.str());
    }
    const auto c = table.cdf();
    const auto it = std::lower_bound(c.begin(), c.end(), u);
    // cdf().back() == 1 so the search always lands inside the table.
    return static_cast<std::int64_t>(it - c.begin()) + 1;
}

double moment(const LogProbTable& table, int k) {
    if (k < 1) throw DomainError("moment order k must be >= 1");
    const auto lp = table.log_pmf();
    long double acc = 0.0L;
    for (std::size_t i = 0; i < lp.size(); ++i) {
        const long double size = static_cast<long double>(i + 1);
        acc += std::exp(static_cast<long double>(k) * std::log(size) + lp[i]);
    }
    return static_cast<double>(acc);
}

} // namespace abelian
