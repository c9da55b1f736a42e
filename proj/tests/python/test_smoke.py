import math
from fractions import Fraction

import numpy as np
import pytest

import abelian


def test_pmf_small_case():
    p = abelian.AbelianParams(0.5, 3)
    assert abelian.pmf(p, 1) == pytest.approx(0.625, rel=1e-15)
    assert abelian.log_pmf(p, 3) == pytest.approx(math.log(0.125), rel=1e-15)
    assert abelian.log_pmf(p, 0) == -math.inf
    assert abelian.mean_closed_form(p) == pytest.approx(1.5)


def test_invalid_alpha_raises_value_error():
    with pytest.raises(ValueError):
        abelian.AbelianParams(1.5, 10)
    with pytest.raises(abelian.DomainError):
        abelian.AbelianParams(0.0, 10)


def test_table_and_quantile():
    t = abelian.build_table(abelian.AbelianParams(0.9, 100))
    assert np.exp(t.log_pmf).sum() == pytest.approx(1.0, abs=1e-12)
    assert t.cdf[-1] == 1.0
    assert abelian.quantile(t, 1.0) == 100
    assert abelian.moment(t, 1) == pytest.approx(100 / 10.9, abs=1e-10)


def test_sampling_and_fit():
    s = abelian.Sampler(abelian.AbelianParams(0.9, 100), seed=42)
    draws = s.draw_batch(20000)
    assert draws.dtype == np.int64
    assert draws.min() >= 1 and draws.max() <= 100
    again = abelian.Sampler(abelian.AbelianParams(0.9, 100), seed=42).draw_batch(20000)
    assert np.array_equal(draws, again)
    data = abelian.SizeDataset.from_sizes(draws.tolist())
    report = abelian.fit_alpha(data, 100)
    assert abs(report.alpha_hat - 0.9) < 0.02
    assert report.converged


def test_criticality():
    assert abelian.is_monotone_decreasing(abelian.AbelianParams(0.1, 100))
    assert not abelian.is_monotone_decreasing(abelian.AbelianParams(0.99, 100))
    assert abelian.alpha_crit(4) == pytest.approx(9 / 13, abs=1e-9)
    report = abelian.analyze_criticality(100)
    assert abs(report.alpha_crit - 0.9) < 0.05
    assert report.alpha_crit_in_region
    assert report.regime(0.1) == "subcritical"
    assert abelian.critical_region(3) is None


def test_identities():
    assert abelian.lemma_coefficient(3, 6) == 36
    assert abelian.theorem_coefficient(8, 12) == 12**8
    assert abelian.check_normalization_identity(3, Fraction(1, 6))
    assert abelian.check_expectation_identity(5, Fraction(1, 10))
    with pytest.raises(ValueError):
        abelian.check_expectation_identity(5, Fraction(1, 5))
