#pragma once

// Exact-arithmetic checks of the combinatorial identities behind the
// normalization and expectation results of the Abelian distribution.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abelian/exact.hpp"

namespace abelian {

/// Coefficient P_i(N) of x^i in
///   (1/N) * sum_{L=1}^{N-1} binom(N,L) (Lx)^(L-1) (1-Lx)^(N-L-1),
/// expanded term by term with generalized binomials so it is a polynomial
/// in N for every n >= 1. Equals 1 for i = 0 and N^(i-1) for i > 0.
BigInteger lemma_coefficient(std::int64_t i, std::int64_t n);

/// sum_{k=0}^{i} (-1)^(i-k) binom(N,k) binom(N-k-1,i-k) k^i, the lemma
/// coefficient sum with the index alignment used in its original
/// write-up. Evaluates to N * lemma_coefficient(i, N) for i > 0.
BigInteger lemma_raw_sum(std::int64_t i, std::int64_t n);

/// sum_{k=0}^{i} (-1)^(i-k) binom(N-1,k) binom(N-k-2,i-k) (k+1)^i = N^i.
BigInteger theorem_coefficient(std::int64_t i, std::int64_t n);

/// Evaluates S = sum_{L=1}^{N-1} binom(N,L)(Lx)^(L-1)(1-Lx)^(N-L-1) exactly
/// and returns true iff both
///   S / N == 1 + x (1 - (Nx)^(N-2)) / (1 - Nx)
///   S     == (N - (N-1)a) / (1 - a) - (Nx)^(N-1) / (1 - Nx),  a = Nx.
/// DomainError unless 0 < x < 1/N.
bool check_normalization_identity(std::int64_t n, const ExactRational& x);

/// sum_{L=1}^{N} binom(N-1,L-1)(Lx)^(L-1)(1-Lx)^(N-L-1) == 1/(1-Nx).
bool check_expectation_identity(std::int64_t n, const ExactRational& x);

/// Exact normalized PMF mass sum at alpha = N x. Equals 1.
ExactRational exact_pmf_sum(std::int64_t n, const ExactRational& x);

/// Exact PMF value at alpha = N x.
ExactRational exact_pmf(std::int64_t n, const ExactRational& x, std::int64_t size);

struct IdentitySuiteConfig {
    std::int64_t max_i = 8;
    std::int64_t max_n = 12;
    std::int64_t max_rational_n = 20;
    int points_per_n = 50;
    std::uint64_t seed = 20110301;
    /// Added to every expected coefficient; non-zero only to exercise the
    /// failure path.
    std::int64_t fault_offset = 0;
};

struct IdentityResult {
    std::string name;
    std::int64_t instances = 0;
    bool passed = true;
    /// First failing instance, e.g. "i=3 n=6 got=216 expected=36".
    std::optional<std::string> witness;
};

std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& config);

} // namespace abelian
