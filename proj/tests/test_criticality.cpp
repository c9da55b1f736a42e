#include <doctest.h>

#include <cmath>

#include "abelian/criticality.hpp"
#include "abelian/errors.hpp"
#include "abelian/identities.hpp"

using namespace abelian;

namespace {

// Exact-rational monotonicity at alpha = k / denom.
bool exact_monotone(std::int64_t n, std::int64_t k, std::int64_t denom) {
    const ExactRational x(k, denom * n);
    ExactRational previous = exact_pmf(n, x, 1);
    for (std::int64_t size = 2; size <= n; ++size) {
        const ExactRational current = exact_pmf(n, x, size);
        if (!(current < previous)) return false;
        previous = current;
    }
    return true;
}

std::vector<double> planted_power_law(std::int64_t n, double gamma) {
    std::vector<double> lp(static_cast<std::size_t>(n));
    double z = 0.0;
    for (std::int64_t size = 1; size <= n; ++size) z += std::pow(static_cast<double>(size), gamma);
    for (std::int64_t size = 1; size <= n; ++size) {
        lp[static_cast<std::size_t>(size - 1)] = gamma * std::log(static_cast<double>(size)) - std::log(z);
    }
    return lp;
}

} // namespace

TEST_CASE("monotonicity examples") {
    CHECK(is_monotone_decreasing(AbelianParams(0.1, 100)));
    CHECK_FALSE(is_monotone_decreasing(AbelianParams(0.99, 100)));
    // N = 2: P(2) > P(1) iff alpha / (1 - alpha) > 2.
    CHECK_FALSE(is_monotone_decreasing(AbelianParams(0.99, 2)));
    CHECK(is_monotone_decreasing(AbelianParams(0.6, 2)));
    CHECK_THROWS_AS(is_monotone_decreasing(AbelianParams(0.5, 1)), DomainError);
}

TEST_CASE("alpha_crit closed forms for small N") {
    CHECK(alpha_crit(2, 1e-12) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(alpha_crit(3, 1e-12) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(alpha_crit(4, 1e-12) == doctest::Approx(9.0 / 13.0).epsilon(1e-9));
    CHECK_THROWS_AS(alpha_crit(1), DomainError);
    CHECK_THROWS_AS(alpha_crit(10, 0.0), DomainError);
}

TEST_CASE("alpha_crit(4) against an exact rational alpha scan") {
    const std::int64_t denom = 10000;
    std::int64_t last_monotone = 0;
    for (std::int64_t k = 1; k < denom; ++k) {
        if (exact_monotone(4, k, denom)) {
            CHECK(k == last_monotone + 1);
            last_monotone = k;
        }
    }
    const double crit = alpha_crit(4, 1e-9);
    CHECK(crit >= static_cast<double>(last_monotone) / denom);
    CHECK(crit <= static_cast<double>(last_monotone + 1) / denom);
}

TEST_CASE("alpha_crit near the scaling reference at N=100") {
    const double crit = alpha_crit(100, 1e-6);
    CHECK(std::fabs(crit - 0.9) < 0.05);
    CHECK(crit == doctest::Approx(0.9312309).epsilon(1e-6));
}

TEST_CASE("predicate switches exactly once on an alpha grid") {
    for (std::int64_t n : {10, 100, 1000}) {
        const double crit = alpha_crit(n, 1e-10);
        for (int k = 1; k < 1000; ++k) {
            const double alpha = k * 1e-3;
            if (std::fabs(alpha - crit) <= 1e-3) continue;
            CHECK_MESSAGE(is_monotone_decreasing(AbelianParams(alpha, n)) == (alpha < crit),
                          "n=" << n << " alpha=" << alpha);
        }
    }
}

TEST_CASE("alpha_crit grows with N and stays below 1") {
    double previous = 0.0;
    for (std::int64_t n : {2, 4, 8, 16, 64, 256, 1024}) {
        const double crit = alpha_crit(n);
        CHECK(crit >= previous);
        CHECK(crit < 1.0);
        previous = crit;
    }
}

TEST_CASE("log-log curvature") {
    CHECK_FALSE(has_sign_change(log_log_curvature(AbelianParams(0.1, 100))));
    CHECK(has_sign_change(log_log_curvature(AbelianParams(0.99, 100))));
    CHECK(log_log_curvature(AbelianParams(0.5, 3)).size() == 1);
    CHECK_THROWS_AS(log_log_curvature(AbelianParams(0.5, 2)), DomainError);

    // Near alpha = 0.9 the mid-range is close to a straight line in log-log.
    const auto flat = log_log_curvature(AbelianParams(0.9, 100));
    const auto steep = log_log_curvature(AbelianParams(0.1, 100));
    for (std::size_t i = 8; i < 40; ++i) {
        CHECK(std::fabs(flat[i]) < 0.5);
        CHECK(std::fabs(flat[i]) < 0.1 * std::fabs(steep[i]));
    }
}

TEST_CASE("sign change detection") {
    CHECK_FALSE(has_sign_change(std::vector<double>{-1, -2, -3}));
    CHECK(has_sign_change(std::vector<double>{-1, 0.5}));
    CHECK(has_sign_change(std::vector<double>{-1, 0.0, -1}));
    CHECK_FALSE(has_sign_change(std::vector<double>{}));
}

TEST_CASE("critical region") {
    const auto r100 = critical_region(100, 1e-3);
    REQUIRE(r100.has_value());
    CHECK(r100->contains(0.99));
    CHECK(r100->lo <= r100->hi);

    CHECK_FALSE(critical_region(3, 1e-3).has_value());
    CHECK_THROWS_AS(critical_region(2, 1e-3), DomainError);
    CHECK_THROWS_AS(critical_region(10, 0.0), DomainError);
}

TEST_CASE("alpha_crit lies in A(N)") {
    for (std::int64_t n : {10, 50, 100, 500}) {
        const auto region = critical_region(n, 1e-3);
        REQUIRE(region.has_value());
        CHECK_MESSAGE(region->contains(alpha_crit(n)), "n=" << n);
    }
}

TEST_CASE("planted power law") {
    for (double gamma : {-1.5, -2.0, -0.7}) {
        const auto lp = planted_power_law(1000, gamma);
        for (double c : log_log_curvature(lp)) CHECK(std::fabs(c) < 1e-8);
        CHECK(std::fabs(tail_exponent(lp, 1, 1000) - gamma) < 1e-10);
        CHECK(std::fabs(tail_exponent(lp, 10, 100) - gamma) < 1e-10);
    }
}

TEST_CASE("tail exponent examples") {
    CHECK(std::fabs(tail_exponent(AbelianParams(1 - 1e-6, 10000), 10, 100) + 1.5) < 0.1);
    CHECK(std::fabs(tail_exponent(AbelianParams(0.9, 100), 2, 20) + 1.5) < 0.2);
    CHECK(tail_exponent(AbelianParams(0.1, 100), 2, 20) < -3.0);

    const AbelianParams p(0.5, 10);
    CHECK_THROWS_AS(tail_exponent(p, 3, 4), DomainError);
    CHECK_THROWS_AS(tail_exponent(p, 0, 5), DomainError);
    CHECK_THROWS_AS(tail_exponent(p, 5, 11), DomainError);
    CHECK_THROWS_AS(tail_exponent(p, 5, 5), DomainError);
}

TEST_CASE("default tail window") {
    const auto w = default_tail_window(10000);
    CHECK(w.l_min == 3);
    CHECK(w.l_max == 100);
    CHECK(default_tail_window(100).l_min == 2);
    CHECK(default_tail_window(100).l_max == 10);
}

TEST_CASE("scaling table") {
    const std::vector<std::int64_t> ns{2, 100};
    const auto rows = alpha_crit_scaling(ns);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].alpha_crit == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(rows[0].reference == doctest::Approx(1 - 1 / std::sqrt(2.0)));
    CHECK(rows[1].reference == doctest::Approx(0.9));
    CHECK(rows[1].difference == doctest::Approx(rows[1].alpha_crit - 0.9));
}

TEST_CASE("criticality report and regimes") {
    const auto report = analyze_criticality(100);
    CHECK(report.n == 100);
    CHECK(std::fabs(report.alpha_crit - 0.9) < 0.05);
    REQUIRE(report.a_region.has_value());
    CHECK(report.alpha_crit_in_region);
    CHECK(std::isfinite(report.tail_exponent));
    CHECK(report.regime(0.1) == Regime::Subcritical);
    CHECK(report.regime(report.alpha_crit) == Regime::CriticalRegion);
    CHECK(report.regime(0.9999999) == Regime::Supercritical);

    const auto two = analyze_criticality(2);
    CHECK_FALSE(two.a_region.has_value());
    CHECK(std::isnan(two.tail_exponent));
    CHECK(two.regime(0.9) == Regime::Supercritical);
    CHECK_THROWS_AS(analyze_criticality(1), DomainError);
}
