"""Search procedures over an advice distribution, with query accounting.

Three strategies are implemented:

* classical_sequential: evaluate f on elements in advice order.
* geometric_search: partition ranks into geometrically growing blocks and
  run a certainty search (with a zero-or-one-marked verification query) on
  each block in turn.  Needs the advice at design time; queries f only.
* unknown_search: the advice is available only as a preparation oracle.
  Each round draws one sample (check it), then runs an amplification
  attempt with an iteration count drawn uniformly from a geometrically
  growing budget; after all rounds fail, a plain certainty search over the
  whole domain guarantees zero-error termination.

Quantum steps are simulated at the probability level: every branch uses the
closed-form success probability and a Bernoulli draw, so runs scale to huge
n while statevector.py independently certifies the same closed forms at
small n.  Expected-cost calculators mirror the simulated processes exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import AdviceDistribution, ConfigError, ParameterError
from .rotation import DEGENERATE_TOL, exact_grover_queries, round_cost

__all__ = [
    "DEFAULT_GEOMETRIC_RATIO",
    "DEFAULT_AMPLIFY_RATIO",
    "AMPLIFY_RATIO_BOUNDS",
    "QueryLedger",
    "RunResult",
    "ExpectationReport",
    "GeometricBlocks",
    "classical_sequential",
    "classical_expected",
    "classical_sampling_expected",
    "geometric_blocks",
    "geometric_search",
    "geometric_expected",
    "unknown_rounds",
    "unknown_search",
    "unknown_expected_exact",
    "unknown_expected_mu",
    "monte_carlo",
]

# Block growth ratio for the known-advice search; e minimizes the constant
# in its sqrt-weighted expected-cost bound.
DEFAULT_GEOMETRIC_RATIO = math.e

# Iteration-budget growth ratio for the oracle-only search.  The analysis
# that keeps every per-round overhead summable requires 1 < k < 4/3; 1.162
# is the minimizer of the resulting constant.
DEFAULT_AMPLIFY_RATIO = 1.162
AMPLIFY_RATIO_BOUNDS = (1.0, 4.0 / 3.0)

# Relative nudge before floor() on iterated powers, per the schedule rule:
# multiply in float, never take floating logs.
_FLOOR_EPS = 1e-12

_CHUNK = 1 << 22


@dataclass
class QueryLedger:
    """Monotone per-oracle query counters for one run."""

    f_queries: int = 0
    o_mu_queries: int = 0
    o_mu_inv_queries: int = 0

    def add(self, f: int = 0, o_mu: int = 0, o_mu_inv: int = 0) -> None:
        self.f_queries += f
        self.o_mu_queries += o_mu
        self.o_mu_inv_queries += o_mu_inv

    def totals(self) -> tuple[int, int, int]:
        return (self.f_queries, self.o_mu_queries, self.o_mu_inv_queries)


@dataclass(frozen=True)
class RunResult:
    """Outcome of one zero-error run: found element, cost, rounds used."""

    found: int
    ledger: QueryLedger
    rounds: int


@dataclass(frozen=True)
class ExpectationReport:
    """Per-oracle expected query counts, exact or Monte Carlo estimated."""

    f_mean: float
    f_stderr: float
    o_mu_mean: float
    o_mu_stderr: float
    o_mu_inv_mean: float
    o_mu_inv_stderr: float
    method: str
    trials: int = 0

    def means(self) -> tuple[float, float, float]:
        return (self.f_mean, self.o_mu_mean, self.o_mu_inv_mean)

    def stderrs(self) -> tuple[float, float, float]:
        return (self.f_stderr, self.o_mu_stderr, self.o_mu_inv_stderr)


def _exact_report(f: float, o_mu: float, o_mu_inv: float) -> ExpectationReport:
    return ExpectationReport(f_mean=f, f_stderr=0.0, o_mu_mean=o_mu, o_mu_stderr=0.0,
                             o_mu_inv_mean=o_mu_inv, o_mu_inv_stderr=0.0,
                             method="exact", trials=0)


def _check_rank(dist: AdviceDistribution, marked_rank: int) -> None:
    if not isinstance(marked_rank, (int, np.integer)) or isinstance(marked_rank, bool):
        raise ParameterError(f"marked rank must be an integer, got {marked_rank!r}")
    if not 1 <= marked_rank <= dist.n:
        raise ParameterError(f"marked rank {marked_rank} outside 1..{dist.n}")


def _check_geometric_ratio(k: float) -> float:
    k = float(k)
    if not math.isfinite(k) or k <= 1.0:
        raise ParameterError(f"block growth ratio must be finite and > 1, got {k}")
    return k


def _check_amplify_ratio(k: float) -> float:
    k = float(k)
    lo, hi = AMPLIFY_RATIO_BOUNDS
    if not (lo < k < hi):
        raise ParameterError(
            f"iteration-budget ratio must lie in ({lo}, {hi:.4g}), got {k}")
    return k


def _floored_power(power: float) -> int:
    """floor of an iterated power with a relative epsilon nudge."""
    return int(math.floor(power * (1.0 + _FLOOR_EPS)))


# ---------------------------------------------------------------------------
# classical baseline


def classical_sequential(dist: AdviceDistribution, marked_rank: int) -> RunResult:
    """Probe elements in advice order; stops at the marked one."""
    _check_rank(dist, marked_rank)
    return RunResult(found=int(dist.perm[marked_rank - 1]),
                     ledger=QueryLedger(f_queries=int(marked_rank)),
                     rounds=int(marked_rank))


def classical_expected(dist: AdviceDistribution) -> float:
    """Expected probes of the sequential scan: sum_x p_x * x."""
    partials = []
    for lo in range(0, dist.n, _CHUNK):
        hi = min(lo + _CHUNK, dist.n)
        xs = np.arange(lo + 1, hi + 1, dtype=np.float64)
        partials.append(float(np.dot(dist.probs[lo:hi], xs)))
    return math.fsum(partials)


def classical_sampling_expected(dist: AdviceDistribution) -> float:
    """Expected total probes when elements are i.i.d. samples from the advice.

    Each element x needs a Geometric(p_x) number of draws, so the advice
    average is sum_x p_x / p_x = n exactly when every p_x > 0; any
    zero-probability element makes the search diverge (returns inf).
    """
    if dist.support_size() < dist.n:
        return math.inf
    return float(dist.n)


# ---------------------------------------------------------------------------
# known advice: geometric block search


@dataclass(frozen=True)
class GeometricBlocks:
    """Rank partition into blocks of nominal size floor(ratio^m).

    blocks are 1-based inclusive (start, end) ranges covering {1..n};
    the final block may be truncated by n, but search cost accounting
    always charges the nominal size.
    """

    ratio: float
    blocks: list[tuple[int, int]]
    nominal_sizes: list[int]

    def block_of(self, rank: int) -> int:
        """0-based index of the block containing a 1-based rank."""
        for idx, (start, end) in enumerate(self.blocks):
            if start <= rank <= end:
                return idx
        raise ParameterError(f"rank {rank} outside the partition")

    def cumulative_costs(self) -> np.ndarray:
        """Total f queries after searching blocks 0..m, for each m."""
        costs = [exact_grover_queries(size, zero_or_one=True)
                 for size in self.nominal_sizes]
        return np.cumsum(costs, dtype=np.float64)


def geometric_blocks(n: int, k: float = DEFAULT_GEOMETRIC_RATIO) -> GeometricBlocks:
    """Partition {1..n} into blocks sized floor(k^0), floor(k^1), ..."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    k = _check_geometric_ratio(k)
    blocks: list[tuple[int, int]] = []
    nominal: list[int] = []
    start, end = 1, 1
    power = 1.0
    while start <= n:
        blocks.append((start, min(end, n)))
        nominal.append(_floored_power(power))
        power *= k
        start = end + 1
        end = min(start + _floored_power(power) - 1, n)
    return GeometricBlocks(ratio=k, blocks=blocks, nominal_sizes=nominal)


def geometric_search(dist: AdviceDistribution, marked_rank: int,
                     k: float = DEFAULT_GEOMETRIC_RATIO) -> RunResult:
    """Search blocks in order with a certainty sweep per block.

    Deterministic: each block search finds the marked element exactly when
    the block contains it, at the nominal zero-or-one cost, so the ledger
    is a function of the containing block alone.  Queries f only.
    """
    _check_rank(dist, marked_rank)
    parts = geometric_blocks(dist.n, k)
    idx = parts.block_of(marked_rank)
    f_total = int(parts.cumulative_costs()[idx])
    return RunResult(found=int(dist.perm[marked_rank - 1]),
                     ledger=QueryLedger(f_queries=f_total),
                     rounds=idx + 1)


def geometric_expected(dist: AdviceDistribution,
                       k: float = DEFAULT_GEOMETRIC_RATIO) -> ExpectationReport:
    """Exact expected f queries of the block search under the advice."""
    parts = geometric_blocks(dist.n, k)
    cum = parts.cumulative_costs()
    starts = np.array([start - 1 for start, _ in parts.blocks], dtype=np.intp)
    masses = np.add.reduceat(dist.probs, starts)
    f_mean = math.fsum(cum * masses)
    return _exact_report(f=f_mean, o_mu=0.0, o_mu_inv=0.0)


# ---------------------------------------------------------------------------
# oracle-only advice: sample, amplify with growing budgets, then fall back


def unknown_rounds(n: int, k: float = DEFAULT_AMPLIFY_RATIO) -> int:
    """Largest j with k^j <= sqrt(n); computed by iterated multiplication."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    k = _check_amplify_ratio(k)
    limit = math.sqrt(n) * (1.0 + _FLOOR_EPS)
    j, power = 0, 1.0
    while power * k <= limit:
        power *= k
        j += 1
    return j


def _round_sizes(n: int, k: float) -> list[int]:
    """Iteration budgets floor(k^j) for rounds j = 0..unknown_rounds(n, k)."""
    sizes = []
    power = 1.0
    for _ in range(unknown_rounds(n, k) + 1):
        sizes.append(_floored_power(power))
        power *= k
    return sizes


def unknown_search(dist: AdviceDistribution, marked_rank: int,
                   rng: np.random.Generator,
                   k: float = DEFAULT_AMPLIFY_RATIO) -> RunResult:
    """One zero-error run of the sample-and-amplify search.

    Per round: draw one sample from the advice and check it (1 preparation
    + 1 f query, succeeds with probability p_marked); if that misses, run
    an amplification attempt whose iteration count i is uniform on
    {0..floor(k^j)-1} (i+1 preparations and f checks, i inversions,
    succeeds with probability sin^2((2i+1) arcsin sqrt(p_marked))).
    Rounds restart fresh.  If every round fails, a certainty search over
    the whole domain (f queries only) ends the run.
    """
    _check_rank(dist, marked_rank)
    k = _check_amplify_ratio(k)
    p = dist.prob(marked_rank)
    theta = math.asin(math.sqrt(p))
    found = int(dist.perm[marked_rank - 1])
    ledger = QueryLedger()
    sizes = _round_sizes(dist.n, k)
    for j, m in enumerate(sizes):
        ledger.add(f=1, o_mu=1)
        if rng.random() < p:
            return RunResult(found=found, ledger=ledger, rounds=j + 1)
        i = int(rng.integers(m))
        cost = round_cost(i)
        ledger.add(f=cost.f, o_mu=cost.o_mu, o_mu_inv=cost.o_mu_inv)
        if rng.random() < math.sin((2 * i + 1) * theta) ** 2:
            return RunResult(found=found, ledger=ledger, rounds=j + 1)
    ledger.add(f=exact_grover_queries(dist.n, zero_or_one=False))
    return RunResult(found=found, ledger=ledger, rounds=len(sizes))


def _avg_success_fast(p: np.ndarray, theta: np.ndarray,
                      c: np.ndarray, tiny: np.ndarray, top: np.ndarray,
                      m: int) -> np.ndarray:
    """Uniform-budget average success probability, vectorized per round.

    Closed form 1/2 - sin(4m theta)/(8m c) for interior p; the quadratic
    leading term p (4m^2-1)/3 below the degenerate-angle cutoff and exactly
    1 at p = 1 (both limits of the explicit average; absolute error of the
    leading term is ~(m theta)^2 * P, far below every tolerance used here).
    """
    if m == 1:
        return p.copy()
    out = 0.5 - np.sin((4.0 * m) * theta) / ((8.0 * m) * c)
    np.clip(out, 0.0, 1.0, out=out)
    if np.any(tiny):
        out[tiny] = p[tiny] * ((4.0 * m * m - 1.0) / 3.0)
    if np.any(top):
        out[top] = 1.0
    return out


def _amplify_expected(p: np.ndarray, n: int, k: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact per-oracle expected costs of unknown_search for each p.

    Mirrors the simulated process: reach round j with probability
    prod_{i<j} (1 - s_i) where s_i = p + (1-p) P_{m_i}; a reached round
    always pays the sampling step and pays the amplification step exactly
    when the sample misses.
    """
    p = np.asarray(p, dtype=np.float64)
    q = 1.0 - p
    c2 = p * q
    tiny = p < DEGENERATE_TOL
    top = (c2 < DEGENERATE_TOL) & ~tiny
    theta = np.arcsin(np.sqrt(p))
    c = np.sqrt(np.where(c2 < DEGENERATE_TOL, 1.0, c2))
    reach = np.ones_like(p)
    shared = np.zeros_like(p)   # f and preparation counters agree per round
    inv = np.zeros_like(p)
    for m in _round_sizes(n, k):
        avg = _avg_success_fast(p, theta, c, tiny, top, m)
        miss_weight = reach * q
        shared += reach + miss_weight * ((m + 1) * 0.5)
        inv += miss_weight * ((m - 1) * 0.5)
        round_success = np.minimum(p + q * avg, 1.0)
        reach = reach * (1.0 - round_success)
    f = shared + reach * float(exact_grover_queries(n, zero_or_one=False))
    return f, shared, inv


def unknown_expected_exact(dist: AdviceDistribution, marked_rank: int,
                           k: float = DEFAULT_AMPLIFY_RATIO) -> ExpectationReport:
    """Exact per-oracle expected costs for one fixed marked rank."""
    _check_rank(dist, marked_rank)
    k = _check_amplify_ratio(k)
    f, o_mu, inv = _amplify_expected(np.array([dist.prob(marked_rank)]), dist.n, k)
    return _exact_report(f=float(f[0]), o_mu=float(o_mu[0]), o_mu_inv=float(inv[0]))


def unknown_expected_mu(dist: AdviceDistribution,
                        k: float = DEFAULT_AMPLIFY_RATIO) -> ExpectationReport:
    """Advice-averaged exact expected costs: sum_x p_x E[cost | marked=x]."""
    k = _check_amplify_ratio(k)
    f_parts, o_parts, i_parts = [], [], []
    for lo in range(0, dist.n, _CHUNK):
        block = dist.probs[lo : lo + _CHUNK]
        f, o_mu, inv = _amplify_expected(block, dist.n, k)
        f_parts.append(float(np.dot(block, f)))
        o_parts.append(float(np.dot(block, o_mu)))
        i_parts.append(float(np.dot(block, inv)))
    return _exact_report(f=math.fsum(f_parts), o_mu=math.fsum(o_parts),
                         o_mu_inv=math.fsum(i_parts))


# ---------------------------------------------------------------------------
# Monte Carlo driver


def _trial_seed(seed: int, stream: int, index: int = 0) -> np.random.Generator:
    """Deterministic per-task generator; fan-out safe by construction."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                        spawn_key=(stream, index)))


def _geometric_cost_by_rank(n: int, k: float) -> np.ndarray:
    parts = geometric_blocks(n, k)
    cum = parts.cumulative_costs()
    lengths = [end - start + 1 for start, end in parts.blocks]
    return np.repeat(cum, lengths)


def monte_carlo(algorithm: str, dist: AdviceDistribution, trials: int, seed: int,
                k: float | None = None) -> ExpectationReport:
    """Estimate per-oracle expected costs with the marked element ~ advice.

    Deterministic for a given seed: the marked ranks come from one derived
    stream and each trial's simulation randomness from its own derived
    stream, so results do not depend on execution order.
    """
    if not isinstance(trials, (int, np.integer)) or isinstance(trials, bool) or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")
    ranks = dist.sample(_trial_seed(seed, 0), size=trials)
    if algorithm == "classical":
        f = ranks.astype(np.float64)
        o_mu = np.zeros(trials)
        inv = np.zeros(trials)
    elif algorithm == "geometric":
        ratio = DEFAULT_GEOMETRIC_RATIO if k is None else _check_geometric_ratio(k)
        f = _geometric_cost_by_rank(dist.n, ratio)[ranks - 1]
        o_mu = np.zeros(trials)
        inv = np.zeros(trials)
    elif algorithm == "unknown":
        ratio = DEFAULT_AMPLIFY_RATIO if k is None else _check_amplify_ratio(k)
        f = np.empty(trials)
        o_mu = np.empty(trials)
        inv = np.empty(trials)
        for t in range(trials):
            run = unknown_search(dist, int(ranks[t]), _trial_seed(seed, 1, t), ratio)
            f[t], o_mu[t], inv[t] = run.ledger.totals()
    else:
        raise ConfigError(f"unknown algorithm id {algorithm!r}")

    def _stats(values: np.ndarray) -> tuple[float, float]:
        mean = float(np.mean(values))
        if trials < 2:
            return mean, 0.0
        return mean, float(np.std(values, ddof=1) / math.sqrt(trials))

    f_mean, f_err = _stats(f)
    o_mean, o_err = _stats(o_mu)
    i_mean, i_err = _stats(inv)
    return ExpectationReport(f_mean=f_mean, f_stderr=f_err, o_mu_mean=o_mean,
                             o_mu_stderr=o_err, o_mu_inv_mean=i_mean,
                             o_mu_inv_stderr=i_err, method="monte_carlo",
                             trials=int(trials))
