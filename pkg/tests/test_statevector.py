from __future__ import annotations

import math

import numpy as np
import pytest

from advice_search import make_explicit, make_power_law, success_prob
from advice_search.statevector import (
    CapExceeded,
    DEFAULT_DIM_CAP,
    StateVector,
    aa_iteration,
    aa_success_curve,
    exact_search,
    exact_search_profile,
    grover_success,
    prepare_mu,
)

from reference import (
    ref_certainty_reflections,
    ref_oracle_matrix,
    ref_reflection_matrix,
)


def test_prepare_mu_amplitudes():
    d = make_explicit([1.0, 3.0])
    state = prepare_mu(d)
    np.testing.assert_allclose(state.amps, [math.sqrt(0.75), math.sqrt(0.25)])
    assert math.isclose(state.norm(), 1.0, abs_tol=1e-15)


def test_prepare_mu_probabilities_round_trip():
    d = make_power_law(50, -1.3)
    state = prepare_mu(d)
    for rank in (1, 7, 50):
        assert math.isclose(state.probability(rank), d.prob(rank), abs_tol=1e-15)


def test_aa_iteration_matches_dense_matrices():
    rng = np.random.default_rng(21)
    for _ in range(15):
        n = int(rng.integers(2, 40))
        weights = rng.exponential(size=n) + 1e-3
        d = make_explicit(weights)
        marked = int(rng.integers(1, n + 1))
        mu = prepare_mu(d).amps
        op = ref_reflection_matrix(mu) @ ref_oracle_matrix(n, marked)
        state = StateVector(mu.copy())
        expected = mu.copy()
        for _ in range(6):
            state = aa_iteration(state, d, marked)
            expected = op @ expected
            np.testing.assert_allclose(state.amps, expected, atol=1e-12)
            assert math.isclose(state.norm(), 1.0, abs_tol=1e-12)


def test_aa_success_curve_matches_closed_form():
    rng = np.random.default_rng(22)
    for _ in range(10):
        n = int(rng.integers(2, 64))
        d = make_explicit(rng.exponential(size=n))
        marked = int(rng.integers(1, n + 1))
        p = d.prob(marked)
        curve = aa_success_curve(d, marked, 12)
        for j, value in enumerate(curve):
            assert math.isclose(value, success_prob(p, j), abs_tol=1e-9)


def test_grover_success_uniform():
    for n in (2, 4, 10, 100):
        for j in (0, 1, 3):
            assert math.isclose(grover_success(n, j),
                                success_prob(1.0 / n, j), abs_tol=1e-12)


def test_exact_search_reaches_certainty():
    for n in range(1, 65):
        prob, reflections = exact_search_profile(n)
        assert prob == pytest.approx(1.0, abs=1e-9)
        assert reflections == ref_certainty_reflections(n)


def test_exact_search_reflection_budget():
    # never more reflections than the plain ceiling count
    for n in range(1, 200):
        _, reflections = exact_search_profile(n)
        assert reflections <= math.ceil(math.pi / 4 * math.sqrt(n))


def test_exact_search_small_cases():
    _, reflections = exact_search_profile(1)
    assert reflections == 0
    prob, reflections = exact_search_profile(4)
    assert prob == pytest.approx(1.0, abs=1e-12)
    assert reflections == 1


def test_exact_search_run_result():
    rng = np.random.default_rng(5)
    for n in (1, 2, 7, 30):
        for marked in (1, n):
            run = exact_search(n, marked_rank=marked, rng=rng)
            assert run.found == marked
            _, reflections = exact_search_profile(n)
            assert run.ledger.f_queries == reflections
            assert run.ledger.o_mu_queries == 0


def test_dimension_cap_enforced():
    with pytest.raises(CapExceeded):
        prepare_mu(make_power_law(DEFAULT_DIM_CAP + 1, -1.0))
    with pytest.raises(CapExceeded):
        grover_success(8, 1, cap=4)
    with pytest.raises(CapExceeded):
        # ancilla doubles the dimension, so the cap binds at n > cap/2
        exact_search_profile(3000, cap=4096)
    # at the boundary everything still runs
    assert grover_success(4, 1, cap=4) == pytest.approx(1.0)


def test_statevector_norm_validation():
    with pytest.raises(ValueError):
        StateVector(np.array([0.5, 0.5]))  # unnormalized
