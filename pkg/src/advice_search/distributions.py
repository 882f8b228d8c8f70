"""Advice distributions over the search domain {1, ..., n}.

An advice distribution assigns every domain element a prior probability of
being the marked one.  Probabilities are stored sorted in non-increasing
order; ``perm`` remembers where each sorted rank lived in the caller's
original ordering.  Ranks and original positions are 1-based throughout,
matching the {1, ..., n} domain convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AdviceDistribution",
    "PowerLawSpec",
    "ConfigError",
    "ParameterError",
    "make_power_law",
    "make_explicit",
    "dist_from_config",
    "power_law_alpha",
    "compensated_sum",
]

# Normalization slack allowed on sum(probs); everything downstream assumes
# the probabilities are a distribution up to this tolerance.
PROB_SUM_TOL = 1e-12

_CHUNK = 1 << 22


class ConfigError(ValueError):
    """Structurally malformed configuration (missing key, wrong type)."""


class ParameterError(ValueError):
    """Well-formed configuration with an out-of-range parameter value."""


def compensated_sum(values) -> float:
    """Sum floats with an error-free top-level accumulation.

    Chunks are reduced pairwise by numpy; chunk partials are then combined
    exactly with math.fsum, so long inputs (n up to 2**30) do not drift.
    Accepts an array or an iterable of arrays (streamed, constant memory).
    """
    if isinstance(values, np.ndarray):
        values = (values,)
    partials = []
    for block in values:
        flat = np.asarray(block, dtype=np.float64).ravel()
        for i in range(0, flat.size, _CHUNK):
            partials.append(float(np.sum(flat[i : i + _CHUNK])))
    return math.fsum(partials)


def _power_chunks(n: int, k: float):
    """Yield x^k for x = 1..n in bounded-size float64 blocks."""
    for lo in range(1, n + 1, _CHUNK):
        hi = min(lo + _CHUNK - 1, n)
        yield np.arange(lo, hi + 1, dtype=np.float64) ** k


def power_law_alpha(n: int, k: float) -> float:
    """Normalizing constant alpha with sum_{x=1..n} alpha*x^k = 1.

    Direct summation; no closed-form/integral shortcut so the value is the
    one the materialized probabilities actually use.
    """
    _check_power_law_params(n, k)
    return 1.0 / compensated_sum(_power_chunks(n, k))


@dataclass(frozen=True)
class PowerLawSpec:
    """Parameters of a truncated power law p_x = alpha * x^k on {1..n}."""

    n: int
    k: float
    alpha: float

    def integral_bracket(self) -> tuple[float, float]:
        """Bounds (lo, hi) with lo <= 1/alpha <= hi from the integral test."""
        if self.k == -1.0:
            lo = math.log(self.n)
        else:
            lo = (self.n ** (self.k + 1) - 1.0) / (self.k + 1)
        return lo, lo + 1.0

    def threshold_rank_closed_form(self) -> int:
        """floor((alpha*n)^(-1/k)): largest x with alpha*x^k >= 1/n."""
        return min(self.n, int(math.floor((self.alpha * self.n) ** (-1.0 / self.k))))


@dataclass
class AdviceDistribution:
    """A prior over {1..n}, sorted non-increasing, with sampling support."""

    n: int
    probs: np.ndarray
    perm: np.ndarray
    power_law: PowerLawSpec | None = None
    _cdf: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def cdf(self) -> np.ndarray:
        """Prefix sums of probs, built lazily (exact-mode runs never need it)."""
        if self._cdf is None:
            self._cdf = np.cumsum(self.probs)
        return self._cdf

    def prob(self, rank: int) -> float:
        """Probability of the element at sorted rank (1-based)."""
        if not 1 <= rank <= self.n:
            raise ParameterError(f"rank {rank} outside 1..{self.n}")
        return float(self.probs[rank - 1])

    def support_size(self) -> int:
        """Number of ranks with positive probability."""
        # probs is sorted non-increasing, so the support is a prefix.
        return int(np.searchsorted(-self.probs, 0.0, side="left"))

    def x0_threshold(self) -> int:
        """Largest sorted rank with p_x >= 1/n, or 0 if none."""
        return int(np.searchsorted(-self.probs, -1.0 / self.n, side="right"))

    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Draw sorted-rank indices ~ probs (never a zero-probability rank)."""
        u = rng.random(size)
        idx = np.searchsorted(self.cdf, u, side="right")
        idx = np.minimum(idx, self.support_size() - 1)
        if size is None:
            return int(idx) + 1
        return idx.astype(np.int64) + 1

    def validate(self) -> None:
        """Raise if the structural invariants are violated."""
        if self.probs.shape != (self.n,) or self.perm.shape != (self.n,):
            raise ParameterError("probs/perm length must equal n")
        total = compensated_sum(self.probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ParameterError(f"probabilities sum to {total!r}, not 1")
        if np.any(self.probs < 0.0):
            raise ParameterError("negative probability")
        if np.any(np.diff(self.probs) > 0.0):
            raise ParameterError("probs not sorted non-increasing")
        if not np.array_equal(np.sort(self.perm), np.arange(1, self.n + 1)):
            raise ParameterError("perm is not a permutation of 1..n")


def _check_power_law_params(n, k) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ConfigError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if not isinstance(k, (int, float, np.floating)) or isinstance(k, bool):
        raise ConfigError(f"k must be a number, got {k!r}")
    k = float(k)
    if math.isnan(k) or math.isinf(k) or k >= 0.0:
        raise ParameterError(f"power-law exponent must be finite and < 0, got {k}")


def make_power_law(n: int, k: float) -> AdviceDistribution:
    """Power-law advice p_x = alpha * x^k on {1..n}, k < 0 (already sorted)."""
    _check_power_law_params(n, k)
    k = float(k)
    alpha = power_law_alpha(n, k)
    probs = np.arange(1, n + 1, dtype=np.float64) ** k
    probs *= alpha
    perm = np.arange(1, n + 1, dtype=np.int32 if n < 2**31 else np.int64)
    return AdviceDistribution(n=n, probs=probs, perm=perm,
                              power_law=PowerLawSpec(n=n, k=k, alpha=alpha))


def make_explicit(weights) -> AdviceDistribution:
    """Normalize non-negative weights into an advice distribution.

    Sorting is stable and descending, so equal weights keep their original
    relative order in perm (perm[i] = original 1-based position of rank i+1).
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ConfigError("weights must be a non-empty 1-D sequence")
    if np.any(~np.isfinite(w)) or np.any(w < 0.0):
        raise ParameterError("weights must be finite and non-negative")
    total = compensated_sum(w)
    if total <= 0.0:
        raise ParameterError("weights must have positive total mass")
    order = np.argsort(-w, kind="stable")
    probs = w[order] / total
    perm = (order + 1).astype(np.int64)
    return AdviceDistribution(n=int(w.size), probs=probs, perm=perm)


def dist_from_config(cfg: dict) -> AdviceDistribution:
    """Build a distribution from the config mapping.

    Schemas: {"kind": "powerlaw", "n": int, "k": float<0}
             {"kind": "explicit", "weights": [w1, w2, ...]}
    """
    if not isinstance(cfg, dict):
        raise ConfigError(f"dist config must be a mapping, got {type(cfg).__name__}")
    kind = cfg.get("kind")
    if kind == "powerlaw":
        extra = set(cfg) - {"kind", "n", "k"}
        if extra:
            raise ConfigError(f"unknown powerlaw keys: {sorted(extra)}")
        if "n" not in cfg or "k" not in cfg:
            raise ConfigError("powerlaw dist needs 'n' and 'k'")
        return make_power_law(cfg["n"], cfg["k"])
    if kind == "explicit":
        extra = set(cfg) - {"kind", "weights"}
        if extra:
            raise ConfigError(f"unknown explicit keys: {sorted(extra)}")
        if "weights" not in cfg or not isinstance(cfg["weights"], (list, tuple)):
            raise ConfigError("explicit dist needs a 'weights' list")
        return make_explicit(cfg["weights"])
    raise ConfigError(f"unknown dist kind {kind!r}")
