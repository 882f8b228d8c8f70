from __future__ import annotations

import pytest

import advice_search.bounds as bounds
import advice_search.validation as validation


def test_all_checks_pass_at_defaults():
    results = validation.run_validation(trials=2000)
    assert results, "no checks ran"
    assert all(r.status in ("PASS", "SKIP") for r in results)
    names = [r.name for r in results]
    assert len(names) == len(set(names))


def test_result_fields():
    results = validation.run_validation(trials=500)
    for r in results:
        assert r.name and r.status in ("PASS", "FAIL", "SKIP")
        assert r.failed == (r.status == "FAIL")


def test_small_cap_skips_statevector_checks():
    results = validation.run_validation(trials=500, cap=1)
    by_name = {r.name: r for r in results}
    assert by_name["statevector-grover-closed-form"].status == "SKIP"
    assert by_name["exact-search-certainty"].status == "SKIP"
    # probability-level checks are unaffected by the cap
    assert by_name["classical-identities"].status == "PASS"
    assert not any(r.failed for r in results)


def test_crashed_check_counts_as_failure(monkeypatch):
    def _check_boom(seed, trials, cap):
        raise RuntimeError("boom")

    monkeypatch.setattr(validation, "_CHECKS", (_check_boom,))
    results = validation.run_validation(trials=10)
    assert len(results) == 1
    assert results[0].failed
    assert "boom" in results[0].detail


def test_overstated_lower_bound_is_caught(monkeypatch):
    monkeypatch.setattr(bounds, "LAS_VEGAS_COEFF", 0.306)
    results = validation.run_validation(trials=200)
    by_name = {r.name: r for r in results}
    assert by_name["las-vegas-chain"].failed


def test_understated_fallback_ceiling_is_caught(monkeypatch):
    monkeypatch.setattr(bounds, "FALLBACK_COEFF", 0.53)
    results = validation.run_validation(trials=200)
    by_name = {r.name: r for r in results}
    assert by_name["fallback-bound-ceiling"].failed
