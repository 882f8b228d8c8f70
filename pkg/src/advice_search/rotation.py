"""Closed-form arithmetic for amplitude-amplification rotations.

Everything here is exact trigonometry on the 2-D invariant subspace spanned
by the marked and unmarked components: a state whose marked amplitude is
sqrt(p) advances by 2*arcsin(sqrt(p)) per amplification step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "rotation_angle",
    "success_prob",
    "exact_grover_queries",
    "uniform_iter_success",
    "RoundCost",
    "round_cost",
]

# p*(1-p) below this is treated as a degenerate angle (p at 0 or 1 up to
# float noise) and the closed-form average falls back to the explicit mean.
DEGENERATE_TOL = 1e-12

# Integer ceilings of transcendental expressions snap to a nearby integer
# first, so mathematically-integer values do not ceil up from float noise.
_CEIL_SNAP = 1e-9


def _snapped_ceil(value: float) -> int:
    nearest = round(value)
    if abs(value - nearest) < _CEIL_SNAP:
        return int(nearest)
    return int(math.ceil(value))


def _check_probability(p) -> None:
    arr = np.asarray(p, dtype=np.float64)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"probability outside [0, 1]: {p!r}")


def rotation_angle(p):
    """arcsin(sqrt(p)): the half-angle of one amplification step.

    Scalar in, float out; array in, array out.
    """
    _check_probability(p)
    out = np.arcsin(np.sqrt(p))
    return float(out) if np.ndim(p) == 0 else out


def success_prob(p, j: int):
    """Success probability sin^2((2j+1) * arcsin(sqrt(p))) after j steps."""
    if not isinstance(j, (int, np.integer)) or isinstance(j, bool) or j < 0:
        raise ValueError(f"iteration count must be a non-negative integer, got {j!r}")
    theta = rotation_angle(p)
    out = np.clip(np.sin((2 * j + 1) * np.asarray(theta)) ** 2, 0.0, 1.0)
    return float(out) if np.ndim(p) == 0 else out


def exact_grover_queries(m: int, zero_or_one: bool = False) -> int:
    """Oracle queries for certainty search over m elements: ceil(pi/4 sqrt m).

    zero_or_one adds the one verification query needed when the subset may
    contain no marked element (the measured outcome is checked classically).
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1:
        raise ValueError(f"subset size must be a positive integer, got {m!r}")
    return _snapped_ceil(0.25 * math.pi * math.sqrt(m)) + (1 if zero_or_one else 0)


def _explicit_iter_average(p: np.ndarray, m: int) -> np.ndarray:
    """Mean of success_prob(p, r) for r = 0..m-1, computed term by term."""
    theta = np.arcsin(np.sqrt(p))
    counts = 2.0 * np.arange(m, dtype=np.float64) + 1.0
    return np.mean(np.sin(np.outer(counts, theta)) ** 2, axis=0)


def uniform_iter_success(p, m: int):
    """Average success probability over iteration counts drawn from {0..m-1}.

    Closed form (1/m) sum_r sin^2((2r+1)theta)
        = 1/2 - sin(4m theta) / (8m sqrt(p(1-p))),
    with an explicit r-average fallback when p(1-p) < 1e-12 (degenerate
    angle, where the closed form is 0/0).
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1:
        raise ValueError(f"iteration budget must be a positive integer, got {m!r}")
    _check_probability(p)
    arr = np.atleast_1d(np.asarray(p, dtype=np.float64))
    c2 = arr * (1.0 - arr)
    degenerate = c2 < DEGENERATE_TOL
    theta = np.arcsin(np.sqrt(arr))
    denom = 8.0 * m * np.sqrt(np.where(degenerate, 1.0, c2))
    out = 0.5 - np.sin(4.0 * m * theta) / denom
    if np.any(degenerate):
        out[degenerate] = _explicit_iter_average(arr[degenerate], m)
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if np.ndim(p) == 0 else out


@dataclass(frozen=True)
class RoundCost:
    """Per-oracle cost of one amplification attempt with i iterations."""

    f: int
    o_mu: int
    o_mu_inv: int


def round_cost(i: int) -> RoundCost:
    """Cost of preparing, amplifying i times, measuring and checking.

    One preparation plus one inverse/re-preparation pair per iteration and
    one classical check of each intermediate and final outcome: i+1 queries
    to f and to the preparation oracle, i to its inverse.
    """
    if not isinstance(i, (int, np.integer)) or isinstance(i, bool) or i < 0:
        raise ValueError(f"iteration count must be a non-negative integer, got {i!r}")
    return RoundCost(f=i + 1, o_mu=i + 1, o_mu_inv=i)
