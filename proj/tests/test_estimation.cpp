#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "abelian/errors.hpp"
#include "abelian/estimation.hpp"
#include "abelian/sampling.hpp"
#include "oracles.hpp"

using namespace abelian;

namespace {

SizeDataset draws(double alpha, std::int64_t n, std::size_t count, std::uint64_t seed) {
    auto s = new_sampler(AbelianParams(alpha, n), seed);
    const auto v = s.draw_batch(count);
    return SizeDataset::from_sizes(v);
}

} // namespace

TEST_CASE("dataset construction") {
    const std::vector<std::int64_t> sizes{3, 1, 1, 2};
    const auto d = SizeDataset::from_sizes(sizes);
    CHECK(d.total() == 4);
    CHECK(d.max_size() == 3);
    CHECK(d.counts().at(1) == 2);
    CHECK_THROWS_AS(SizeDataset::from_sizes(std::vector<std::int64_t>{}), DomainError);
    CHECK_THROWS_AS(SizeDataset::from_sizes(std::vector<std::int64_t>{0, 1}), DomainError);
    CHECK_THROWS_AS(SizeDataset::from_counts({{1, -1}}), DomainError);
    CHECK_THROWS_AS(SizeDataset::from_counts({{1, 0}}), DomainError);
    CHECK(SizeDataset::from_counts({{1, 0}, {4, 2}}).total() == 2);
}

TEST_CASE("log_likelihood") {
    const AbelianParams p(0.5, 3);
    CHECK(log_likelihood(p, SizeDataset::from_counts({{1, 1}})) == doctest::Approx(std::log(0.625)));
    CHECK(log_likelihood(p, SizeDataset::from_counts({{1, 2}, {3, 1}})) ==
          doctest::Approx(2 * std::log(0.625) + std::log(0.125)));
    CHECK(log_likelihood(AbelianParams(0.77, 1), SizeDataset::from_counts({{1, 12345}})) == 0.0);
    CHECK_THROWS_AS(log_likelihood(p, SizeDataset::from_counts({{4, 1}})), DataError);
}

TEST_CASE("fit_alpha recovers alpha=0.9 at N=100") {
    const auto data = draws(0.9, 100, 100000, 7);
    const auto r = fit_alpha(data, 100, 1e-8);
    CHECK(r.converged);
    CHECK_FALSE(r.at_boundary);
    CHECK_FALSE(r.n_estimated);
    CHECK(r.n_used == 100);
    CHECK(std::fabs(r.alpha_hat - 0.9) < 0.01);
    CHECK(std::isfinite(r.alpha_std_error));
    CHECK(std::fabs(r.alpha_hat - 0.9) < 4 * r.alpha_std_error);
    CHECK(r.log_likelihood == log_likelihood(AbelianParams(r.alpha_hat, 100), data));

    // Local optimality.
    const double step = 10 * 1e-8;
    CHECK(log_likelihood(AbelianParams(r.alpha_hat + step, 100), data) <= r.log_likelihood);
    CHECK(log_likelihood(AbelianParams(r.alpha_hat - step, 100), data) <= r.log_likelihood);
}

TEST_CASE("fit_alpha recovers alpha=0.5 at N=20") {
    const auto r = fit_alpha(draws(0.5, 20, 10000, 11), 20, 1e-8);
    CHECK(std::fabs(r.alpha_hat - 0.5) < 0.03);
}

TEST_CASE("all-ones data drives alpha to the lower boundary") {
    const auto r = fit_alpha(SizeDataset::from_counts({{1, 1000000}}), 10, 1e-8);
    CHECK(r.converged);
    CHECK(r.at_boundary);
    CHECK(r.alpha_hat < 10 * kAlphaFloor);
}

TEST_CASE("fit_alpha input validation") {
    const auto data = SizeDataset::from_counts({{5, 1}});
    CHECK_THROWS_AS(fit_alpha(data, 4), DataError);
    CHECK_THROWS_AS(fit_alpha(data, 10, 0.0), DomainError);
}

TEST_CASE("fit result is invariant to observation order") {
    std::vector<std::int64_t> sizes = new_sampler(AbelianParams(0.8, 40), 3).draw_batch(5000);
    const auto a = fit_alpha(SizeDataset::from_sizes(sizes), 40);
    std::mt19937_64 rng(1);
    std::shuffle(sizes.begin(), sizes.end(), rng);
    const auto b = fit_alpha(SizeDataset::from_sizes(sizes), 40);
    CHECK(a.alpha_hat == b.alpha_hat);
    CHECK(a.log_likelihood == b.log_likelihood);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("fit_joint") {
    const auto data = draws(0.9, 100, 100000, 7);
    const auto r = fit_joint(data, std::max<std::int64_t>(80, data.max_size()), 130, 1e-8);
    CHECK(r.n_estimated);
    CHECK(std::abs(r.n_used - 100) <= 15);
    CHECK(std::fabs(r.alpha_hat - 0.9) < 0.01);

    const auto big = SizeDataset::from_counts({{50, 1}, {2, 3}});
    CHECK_THROWS_AS(fit_joint(big, 30, 60), DomainError);
    CHECK_THROWS_AS(fit_joint(big, 60, 59), DomainError);

    const auto ones = SizeDataset::from_counts({{1, 25}});
    const auto r1 = fit_joint(ones, 1, 5);
    CHECK(r1.n_used == 1);
    CHECK(r1.log_likelihood == 0.0);
}

TEST_CASE("estimation error shrinks with sample size") {
    std::vector<double> med;
    for (std::size_t size : {1000u, 10000u, 100000u}) {
        std::vector<double> errors;
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            const auto r = fit_alpha(draws(0.9, 100, size, 1000 + rep), 100, 1e-8);
            errors.push_back(std::fabs(r.alpha_hat - 0.9));
        }
        med.push_back(oracle::median(errors));
    }
    CHECK(med[1] <= med[0]);
    CHECK(med[2] <= med[1]);
}
