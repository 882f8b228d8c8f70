from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from advice_search import (
    AdviceDistribution,
    ConfigError,
    ParameterError,
    compensated_sum,
    dist_from_config,
    make_explicit,
    make_power_law,
    power_law_alpha,
)

from reference import ref_alpha, ref_power_probs, ref_sorted_probs, ref_x0


def test_power_law_two_elements():
    d = make_power_law(2, -1.0)
    np.testing.assert_allclose(d.probs, [2.0 / 3.0, 1.0 / 3.0], rtol=0, atol=1e-15)
    assert d.prob(1) == d.probs[0]
    assert math.isclose(float(d.probs.sum()), 1.0, abs_tol=1e-12)


def test_power_law_matches_reference():
    for n, k in ((7, -0.5), (100, -1.0), (513, -2.3), (64, -0.1)):
        d = make_power_law(n, k)
        np.testing.assert_allclose(d.probs, ref_power_probs(n, k), rtol=1e-13)


def test_power_law_alpha_matches_reference():
    for n, k in ((10, -1.0), (1000, -1.5), (37, -0.25)):
        assert math.isclose(power_law_alpha(n, k), ref_alpha(n, k), rel_tol=1e-12)


def test_alpha_integral_bracket():
    for n in (2, 10, 1000, 10**6):
        for k in (-0.5, -1.0, -1.5, -2.0, -3.0):
            spec = make_power_law(n, k).power_law
            lo, hi = spec.integral_bracket()
            assert lo <= 1.0 / spec.alpha <= hi


def test_explicit_sorting_and_perm():
    d = make_explicit([1.0, 3.0])
    np.testing.assert_allclose(d.probs, [0.75, 0.25])
    assert list(d.perm) == [2, 1]

    d = make_explicit([0.0, 0.0, 5.0])
    np.testing.assert_allclose(d.probs, [1.0, 0.0, 0.0])
    assert list(d.perm) == [3, 1, 2]


def test_explicit_ties_are_stable():
    rng = np.random.default_rng(11)
    for _ in range(20):
        weights = rng.integers(0, 5, size=rng.integers(1, 40)).astype(float)
        if weights.sum() == 0:
            weights[0] = 1.0
        d = make_explicit(weights)
        probs, perm = ref_sorted_probs(weights)
        np.testing.assert_allclose(d.probs, probs, rtol=1e-13, atol=1e-16)
        assert list(d.perm) == perm


def test_threshold_rank():
    d = make_power_law(10**4, -2.0)
    assert d.x0_threshold() == 77
    assert d.power_law.threshold_rank_closed_form() == 77

    for n, k in ((100, -1.0), (333, -1.7), (2048, -0.5), (50, -3.0)):
        d = make_power_law(n, k)
        assert d.x0_threshold() == ref_x0(list(d.probs))
        assert d.x0_threshold() == d.power_law.threshold_rank_closed_form()


def test_threshold_rank_explicit():
    d = make_explicit([4.0, 2.0, 1.0, 1.0])
    # probs 1/2, 1/4, 1/8, 1/8; threshold 1/4
    assert d.x0_threshold() == 2
    assert ref_x0(list(d.probs)) == 2


def test_support_size():
    assert make_explicit([1.0, 2.0, 0.0]).support_size() == 2
    assert make_explicit([5.0]).support_size() == 1
    assert make_power_law(64, -1.0).support_size() == 64


def test_sampling_never_returns_zero_prob_rank():
    d = make_explicit([1.0, 0.0, 0.0])
    rng = np.random.default_rng(0)
    ranks = d.sample(rng, size=1000)
    assert set(ranks.tolist()) == {1}


def test_sampling_chi_square():
    d = make_power_law(8, -1.0)
    rng = np.random.default_rng(123)
    draws = d.sample(rng, size=10**6)
    counts = np.bincount(draws, minlength=9)[1:]
    result = stats.chisquare(counts, f_exp=d.probs * 10**6)
    assert result.pvalue > 1e-3


def test_sampling_top_rank_frequency():
    # frequency of the most likely rank within 5 sigma of its probability
    d = make_power_law(100, -1.5)
    rng = np.random.default_rng(7)
    trials = 200000
    hits = int(np.sum(d.sample(rng, size=trials) == 1))
    p = d.prob(1)
    sigma = math.sqrt(trials * p * (1 - p))
    assert abs(hits - trials * p) < 5 * sigma


def test_sample_scalar_and_dtype():
    d = make_power_law(10, -1.0)
    rng = np.random.default_rng(3)
    one = d.sample(rng)
    assert 1 <= int(one) <= 10
    many = d.sample(rng, size=17)
    assert many.shape == (17,)
    assert many.min() >= 1 and many.max() <= 10


def test_config_round_trip():
    d = dist_from_config({"kind": "powerlaw", "n": 16, "k": -1.0})
    np.testing.assert_allclose(d.probs, make_power_law(16, -1.0).probs)
    d = dist_from_config({"kind": "explicit", "weights": [1, 3]})
    assert list(d.perm) == [2, 1]


def test_config_errors():
    with pytest.raises(ConfigError):
        dist_from_config({"kind": "nonsense"})
    with pytest.raises(ConfigError):
        dist_from_config({"kind": "powerlaw", "n": 4})  # missing k
    with pytest.raises(ConfigError):
        dist_from_config({"kind": "powerlaw", "n": 4, "k": -1.0, "zzz": 1})
    with pytest.raises(ConfigError):
        dist_from_config({"kind": "explicit"})
    with pytest.raises(ConfigError):
        dist_from_config({"kind": "explicit", "weights": "abc"})
    with pytest.raises(ConfigError):
        dist_from_config([1, 2, 3])


def test_parameter_errors():
    with pytest.raises(ParameterError):
        make_power_law(0, -1.0)
    with pytest.raises(ParameterError):
        make_power_law(4, float("nan"))
    with pytest.raises(ParameterError):
        make_power_law(4, 0.5)  # advice must be non-increasing in rank
    with pytest.raises(ConfigError):
        make_explicit([])
    with pytest.raises(ParameterError):
        make_explicit([0.0, 0.0])
    with pytest.raises(ParameterError):
        make_explicit([1.0, -2.0])
    with pytest.raises(ParameterError):
        make_explicit([1.0, float("inf")])
    d = make_power_law(4, -1.0)
    with pytest.raises(ParameterError):
        d.prob(0)
    with pytest.raises(ParameterError):
        d.prob(5)


def test_validate_normalization():
    d = make_power_law(1000, -2.0)
    d.validate()
    bad = AdviceDistribution(n=2, probs=np.array([0.7, 0.7]),
                             perm=np.array([1, 2]))
    with pytest.raises(ParameterError):
        bad.validate()


def test_compensated_sum_accuracy():
    rng = np.random.default_rng(5)
    values = rng.uniform(0.0, 1.0, 200000) * 10.0 ** rng.integers(-8, 8, 200000)
    exact = math.fsum(values.tolist())
    assert math.isclose(compensated_sum(values), exact, rel_tol=1e-13)
    # streamed (iterable-of-arrays) path agrees with the one-shot path
    parts = [values[:777], values[777:50000], values[50000:]]
    assert math.isclose(compensated_sum(parts), exact, rel_tol=1e-13)


def test_large_n_normalization():
    d = make_power_law(2**20, -1.0)
    assert math.isclose(compensated_sum(d.probs), 1.0, abs_tol=1e-11)


def test_cdf_monotone_and_ends_at_one():
    d = make_power_law(1000, -0.7)
    cdf = d.cdf
    assert np.all(np.diff(cdf) >= -1e-15)
    assert math.isclose(float(cdf[-1]), 1.0, abs_tol=1e-12)
