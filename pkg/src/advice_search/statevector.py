"""Dense statevector reference for the amplification primitives.

Small-dimension simulator used to certify the closed forms in rotation.py
and the query accounting in algorithms.py.  Every operator applied here is
a reflection (sign flip on an oracle-selected component, or reflection
about a fixed preparation state), so norms are preserved exactly up to
float roundoff.

The amplification step implements -P R0 P^-1 Rx where P maps |0> to the
advice state |mu>, R0/Rx flip the sign of |0> / the marked component: the
composition -P R0 P^-1 equals the rank-one reflection 2|mu><mu| - I, which
is how it is applied to the amplitude vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algorithms import QueryLedger, RunResult
from .distributions import AdviceDistribution

__all__ = [
    "DEFAULT_DIM_CAP",
    "CapExceeded",
    "StateVector",
    "prepare_mu",
    "aa_iteration",
    "aa_success_curve",
    "grover_success",
    "exact_search",
    "exact_search_profile",
]

# Largest simulated dimension; statevectors are a certification tool, not
# the scaling path, so keep memory/time firmly bounded by default.
DEFAULT_DIM_CAP = 4096


class CapExceeded(ValueError):
    """Requested simulation exceeds the statevector dimension cap."""


def _check_cap(dim: int, cap: int) -> None:
    if dim > cap:
        raise CapExceeded(f"statevector dimension {dim} exceeds cap {cap}")


@dataclass
class StateVector:
    """Amplitude vector over {1..n} (sorted-rank basis); unit norm."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        self.amps = np.asarray(self.amps)
        norm = float(np.linalg.norm(self.amps))
        if not math.isclose(norm, 1.0, abs_tol=1e-9):
            raise ValueError(f"statevector norm {norm!r} is not 1")

    @property
    def dim(self) -> int:
        return int(self.amps.size)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probability(self, rank: int) -> float:
        """Measurement probability of the element at 1-based sorted rank."""
        return float(np.abs(self.amps[rank - 1]) ** 2)


def prepare_mu(dist: AdviceDistribution, cap: int = DEFAULT_DIM_CAP) -> StateVector:
    """Advice state |mu> = sum_x sqrt(p_x) |x>."""
    _check_cap(dist.n, cap)
    return StateVector(np.sqrt(dist.probs).astype(np.complex128))


def _reflect_about(reference: np.ndarray, amps: np.ndarray) -> np.ndarray:
    """(2|ref><ref| - I) amps, for a unit-norm reference."""
    inner = np.vdot(reference, amps)
    return 2.0 * inner * reference - amps


def aa_iteration(state: StateVector, dist: AdviceDistribution, marked_rank: int,
                 cap: int = DEFAULT_DIM_CAP) -> StateVector:
    """One amplification step about |mu> with the marked-component oracle."""
    _check_cap(dist.n, cap)
    mu = np.sqrt(dist.probs).astype(np.complex128)
    amps = state.amps.copy()
    amps[marked_rank - 1] *= -1.0
    return StateVector(_reflect_about(mu, amps))


def aa_success_curve(dist: AdviceDistribution, marked_rank: int, max_iters: int,
                     cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """Success probabilities after j = 0..max_iters amplification steps."""
    _check_cap(dist.n, cap)
    mu = np.sqrt(dist.probs).astype(np.complex128)
    amps = mu.copy()
    out = np.empty(max_iters + 1, dtype=np.float64)
    out[0] = float(np.abs(amps[marked_rank - 1]) ** 2)
    for j in range(1, max_iters + 1):
        amps[marked_rank - 1] *= -1.0
        amps = _reflect_about(mu, amps)
        out[j] = float(np.abs(amps[marked_rank - 1]) ** 2)
    return out


def grover_success(n: int, j: int, cap: int = DEFAULT_DIM_CAP) -> float:
    """Marked-component probability after j plain search iterations on {1..n}."""
    _check_cap(n, cap)
    uniform = np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)
    amps = uniform.copy()
    for _ in range(j):
        amps[0] *= -1.0
        amps = _reflect_about(uniform, amps)
    return float(np.abs(amps[0]) ** 2)


def _certainty_reflections(n: int) -> int:
    """Smallest m with sin(pi / (2(2m+1))) <= 1/sqrt(n)."""
    target = 1.0 / math.sqrt(n)
    theta = math.asin(target)
    m = max(0, math.ceil((math.pi / (2.0 * theta) - 1.0) / 2.0))
    while m > 0 and math.sin(math.pi / (2.0 * (2.0 * (m - 1) + 1.0))) <= target * (1 + 1e-12):
        m -= 1
    while math.sin(math.pi / (2.0 * (2.0 * m + 1.0))) > target * (1 + 1e-12):
        m += 1
    return m


def _exact_amplified_state(n: int, marked_rank: int) -> tuple[np.ndarray, int]:
    """Run the certainty construction; returns ((n,2) amplitudes, reflections).

    An ancilla rotation damps the marked amplitude from 1/sqrt(n) to
    a = sin(pi/(2(2m+1))) so that m amplification steps land the good
    component (marked element, ancilla on) at angle exactly pi/2.
    """
    m = _certainty_reflections(n)
    a = math.sin(math.pi / (2.0 * (2.0 * m + 1.0)))
    sin_beta = min(1.0, a * math.sqrt(n))
    cos_beta = math.sqrt(max(0.0, 1.0 - sin_beta * sin_beta))
    psi0 = np.empty((n, 2), dtype=np.complex128)
    psi0[:, 0] = cos_beta / math.sqrt(n)
    psi0[:, 1] = sin_beta / math.sqrt(n)
    amps = psi0.copy()
    flat0 = psi0.ravel()
    for _ in range(m):
        amps[marked_rank - 1, 1] *= -1.0
        amps = _reflect_about(flat0, amps.ravel()).reshape(n, 2)
    return amps, m


def exact_search_profile(n: int, marked_rank: int = 1,
                         cap: int = DEFAULT_DIM_CAP) -> tuple[float, int]:
    """(success probability, oracle reflections used) of the certainty search."""
    if not 1 <= marked_rank <= n:
        raise ValueError(f"marked rank {marked_rank} outside 1..{n}")
    _check_cap(2 * n, cap)
    amps, m = _exact_amplified_state(n, marked_rank)
    return float(np.abs(amps[marked_rank - 1, 1]) ** 2), m


def exact_search(n: int, marked_rank: int, rng: np.random.Generator | None = None,
                 cap: int = DEFAULT_DIM_CAP) -> RunResult:
    """Certainty search over {1..n}: simulate, measure, return the outcome.

    The ledger charges one f query per reflection.  Success probability is
    1 up to float roundoff, so the measured element is the marked one.
    """
    if not 1 <= marked_rank <= n:
        raise ValueError(f"marked rank {marked_rank} outside 1..{n}")
    _check_cap(2 * n, cap)
    amps, m = _exact_amplified_state(n, marked_rank)
    weights = np.abs(amps.ravel()) ** 2
    if rng is None:
        idx = int(np.argmax(weights))
    else:
        idx = int(rng.choice(weights.size, p=weights / weights.sum()))
    found = idx // 2 + 1
    return RunResult(found=found, ledger=QueryLedger(f_queries=m), rounds=m)
