"""Benchmark rows: one (n, model, mode) measurement per row.

Rows carry the three per-oracle expected counts with standard errors, the
applicable bound columns, and a wall-time column.  Output is deterministic
for a fixed config+seed (the seconds column is 0 unless timing is opted
in, precisely so reruns are byte-identical).
"""
from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import algorithms, bounds
from .distributions import AdviceDistribution, ConfigError, ParameterError, dist_from_config

__all__ = [
    "HEADER",
    "SweepRow",
    "SweepSpec",
    "run_point",
    "run_sweep",
    "rows_to_csv",
    "read_rows",
    "FitResult",
    "fit_slope",
    "fit_scaling",
    "worker_count",
]

log = logging.getLogger("advice_search")

HEADER = ("n", "k_dist", "model", "mode", "f_mean", "f_stderr", "omu_mean",
          "omu_stderr", "omuinv_mean", "omuinv_stderr", "lower_bound",
          "upper_bound", "seconds")

MODELS = ("classical", "geometric", "unknown")
MODES = ("exact", "monte_carlo")

DEFAULT_TRIALS = 10000


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".10g")


@dataclass(frozen=True)
class SweepRow:
    """One benchmark measurement in the fixed 13-column schema."""

    n: int
    k_dist: float | None
    model: str
    mode: str
    f_mean: float
    f_stderr: float
    omu_mean: float
    omu_stderr: float
    omuinv_mean: float
    omuinv_stderr: float
    lower_bound: float | None
    upper_bound: float | None
    seconds: float

    def to_csv(self) -> str:
        return ",".join([
            str(self.n), _fmt(self.k_dist), self.model, self.mode,
            _fmt(self.f_mean), _fmt(self.f_stderr), _fmt(self.omu_mean),
            _fmt(self.omu_stderr), _fmt(self.omuinv_mean),
            _fmt(self.omuinv_stderr), _fmt(self.lower_bound),
            _fmt(self.upper_bound), _fmt(self.seconds),
        ])


def rows_to_csv(rows) -> str:
    lines = [",".join(HEADER)]
    lines.extend(row.to_csv() for row in rows)
    return "\n".join(lines) + "\n"


def read_rows(path: str) -> list[SweepRow]:
    """Parse a sweep CSV back into rows (empty fields become None)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.rstrip("\n") for line in fh if line.strip()]
    except OSError as exc:
        raise ConfigError(f"cannot read {path!r}: {exc}") from exc
    if not lines or tuple(lines[0].split(",")) != HEADER:
        raise ConfigError(f"{path}: missing or wrong header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(HEADER):
            raise ConfigError(f"{path}: bad row {line!r}")
        opt = lambda s: None if s == "" else float(s)
        try:
            rows.append(SweepRow(
                n=int(parts[0]), k_dist=opt(parts[1]), model=parts[2], mode=parts[3],
                f_mean=float(parts[4]), f_stderr=float(parts[5]),
                omu_mean=float(parts[6]), omu_stderr=float(parts[7]),
                omuinv_mean=float(parts[8]), omuinv_stderr=float(parts[9]),
                lower_bound=opt(parts[10]), upper_bound=opt(parts[11]),
                seconds=float(parts[12]),
            ))
        except ValueError as exc:
            raise ConfigError(f"{path}: bad row {line!r}: {exc}") from exc
    return rows


@dataclass(frozen=True)
class SweepSpec:
    """Validated benchmark request (single point when n_grid is None)."""

    dist_cfg: dict
    model: str
    mode: str = "exact"
    n_grid: tuple[int, ...] | None = None
    k_algorithm: float | None = None
    trials: int = DEFAULT_TRIALS
    seed: int = 0

    @classmethod
    def from_config(cls, cfg: dict, *, need_grid: bool, overrides: dict | None = None) -> "SweepSpec":
        if not isinstance(cfg, dict):
            raise ConfigError(f"config must be a mapping, got {type(cfg).__name__}")
        allowed = {"dist", "model", "mode", "k_algorithm", "trials", "seed", "out"}
        if need_grid:
            allowed |= {"n_grid"}
        extra = set(cfg) - allowed
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        merged = dict(cfg)
        for key, value in (overrides or {}).items():
            if value is not None:
                merged[key] = value

        if "dist" not in merged:
            raise ConfigError("config needs a 'dist' section")
        if not isinstance(merged["dist"], dict):
            raise ConfigError("'dist' must be a mapping")
        model = merged.get("model")
        if model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {model!r}")
        mode = merged.get("mode", "exact")
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")

        grid = None
        if need_grid:
            raw = merged.get("n_grid")
            if not isinstance(raw, (list, tuple)) or not raw:
                raise ConfigError("sweep config needs a non-empty 'n_grid' list")
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
                raise ConfigError("n_grid entries must be integers")
            if any(v < 1 for v in raw):
                raise ParameterError(f"n_grid entries must be >= 1: {raw}")
            if any(b <= a for a, b in zip(raw, raw[1:])):
                raise ParameterError(f"n_grid must be strictly increasing: {raw}")
            if merged["dist"].get("kind") != "powerlaw":
                raise ParameterError("sweeps need a powerlaw dist (explicit weights fix n)")
            grid = tuple(raw)

        trials = merged.get("trials", DEFAULT_TRIALS)
        if not isinstance(trials, int) or isinstance(trials, bool):
            raise ConfigError(f"trials must be an integer, got {trials!r}")
        if trials < 1:
            raise ParameterError(f"trials must be >= 1, got {trials}")
        seed = merged.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError(f"seed must be an integer, got {seed!r}")
        k_alg = merged.get("k_algorithm")
        if k_alg is not None and (isinstance(k_alg, bool) or not isinstance(k_alg, (int, float))):
            raise ConfigError(f"k_algorithm must be a number, got {k_alg!r}")
        return cls(dist_cfg=dict(merged["dist"]), model=model, mode=mode,
                   n_grid=grid, k_algorithm=None if k_alg is None else float(k_alg),
                   trials=trials, seed=seed)


def _uses_default_ratio(model: str, k_alg: float | None) -> bool:
    if k_alg is None:
        return True
    default = (algorithms.DEFAULT_GEOMETRIC_RATIO if model == "geometric"
               else algorithms.DEFAULT_AMPLIFY_RATIO)
    return math.isclose(k_alg, default, rel_tol=1e-12, abs_tol=0.0)


def _bound_columns(model: str, k_alg: float | None,
                   dist: AdviceDistribution) -> tuple[float | None, float | None]:
    """Bound columns where defined: the 0.206-based lower bound holds for any
    zero-error quantum search; upper bounds are ratio-specific constants, so
    they are emitted only for the model's default ratio."""
    if model == "classical":
        return None, None
    lower = bounds.q_mu_lower(dist)
    if not _uses_default_ratio(model, k_alg):
        return lower, None
    if model == "geometric":
        return lower, bounds.geometric_upper(dist)
    return lower, bounds.unknown_upper_mu(dist)


def _expectation(spec: SweepSpec, dist: AdviceDistribution,
                 seed: int) -> algorithms.ExpectationReport:
    model, k_alg = spec.model, spec.k_algorithm
    if spec.mode == "monte_carlo":
        return algorithms.monte_carlo(model, dist, spec.trials, seed, k=k_alg)
    if model == "classical":
        return algorithms.ExpectationReport(
            f_mean=algorithms.classical_expected(dist), f_stderr=0.0,
            o_mu_mean=0.0, o_mu_stderr=0.0, o_mu_inv_mean=0.0,
            o_mu_inv_stderr=0.0, method="exact", trials=0)
    if model == "geometric":
        k = algorithms.DEFAULT_GEOMETRIC_RATIO if k_alg is None else k_alg
        return algorithms.geometric_expected(dist, k)
    k = algorithms.DEFAULT_AMPLIFY_RATIO if k_alg is None else k_alg
    return algorithms.unknown_expected_mu(dist, k)


def run_point(spec: SweepSpec, *, n: int | None = None, seed: int | None = None,
              timing: bool = False) -> SweepRow:
    """Measure one row.  n overrides the dist config (sweep grid points)."""
    cfg = dict(spec.dist_cfg)
    if n is not None:
        cfg["n"] = n
    dist = dist_from_config(cfg)
    started = time.perf_counter()
    report = _expectation(spec, dist, spec.seed if seed is None else seed)
    lower, upper = _bound_columns(spec.model, spec.k_algorithm, dist)
    elapsed = time.perf_counter() - started
    log.info("point n=%d model=%s mode=%s took %.3fs", dist.n, spec.model,
             spec.mode, elapsed)
    return SweepRow(
        n=dist.n,
        k_dist=dist.power_law.k if dist.power_law is not None else None,
        model=spec.model, mode=spec.mode,
        f_mean=report.f_mean, f_stderr=report.f_stderr,
        omu_mean=report.o_mu_mean, omu_stderr=report.o_mu_stderr,
        omuinv_mean=report.o_mu_inv_mean, omuinv_stderr=report.o_mu_inv_stderr,
        lower_bound=lower, upper_bound=upper,
        seconds=elapsed if timing else 0.0,
    )


def worker_count() -> int:
    """Worker pool size from ADVICE_SEARCH_THREADS (default 1)."""
    raw = os.environ.get("ADVICE_SEARCH_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"ADVICE_SEARCH_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise ParameterError(f"ADVICE_SEARCH_THREADS must be >= 1, got {value}")
    return value


def _point_task(args) -> tuple[int, SweepRow]:
    spec, index, n, seed, timing = args
    return index, run_point(spec, n=n, seed=seed, timing=timing)


def _row_seed(base_seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=base_seed,
                                      spawn_key=(index,)).generate_state(1)[0])


def run_sweep(spec: SweepSpec, *, timing: bool = False,
              workers: int | None = None) -> list[SweepRow]:
    """Run every grid point; rows come back in grid (n) order regardless of
    worker completion order, with per-point seeds derived from the spec seed."""
    if spec.n_grid is None:
        raise ConfigError("sweep needs an n_grid")
    if workers is None:
        workers = worker_count()
    tasks = [(spec, i, n, _row_seed(spec.seed, i), timing)
             for i, n in enumerate(spec.n_grid)]
    rows: list[SweepRow | None] = [None] * len(tasks)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, row in pool.map(_point_task, tasks):
                rows[index] = row
    else:
        for task in tasks:
            index, row = _point_task(task)
            rows[index] = row
    return rows  # type: ignore[return-value]


@dataclass(frozen=True)
class FitResult:
    """Log-log least-squares exponent fit over a sweep group."""

    model: str
    k_dist: float | None
    alpha: float
    r_squared: float
    points: int


def fit_slope(ns, means) -> tuple[float, float]:
    """Least-squares slope of log(mean) against log(n), with r^2."""
    ns = np.asarray(ns, dtype=np.float64)
    ys = np.asarray(means, dtype=np.float64)
    if ns.size < 3:
        raise ParameterError(f"need at least 3 points to fit, got {ns.size}")
    if np.any(ns <= 0.0) or np.any(ys <= 0.0):
        raise ParameterError("fit needs positive n and positive means")
    lx, ly = np.log(ns), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = ly - (slope * lx + intercept)
    ss_res = float(np.sum(residual**2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 if ss_tot < 1e-30 else 1.0 - ss_res / ss_tot
    return float(slope), r2


def fit_scaling(rows, drop_smallest: int = 2) -> list[FitResult]:
    """Fit each (model, k_dist, mode) group, discarding the smallest n
    points (transient-dominated) before fitting."""
    groups: dict[tuple, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault((row.model, row.k_dist, row.mode), []).append(row)
    out = []
    for (model, k_dist, _mode), members in sorted(
            groups.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0.0, kv[0][2])):
        members.sort(key=lambda r: r.n)
        kept = members[drop_smallest:]
        if len(kept) < 3:
            raise ParameterError(
                f"group {model}/k={k_dist}: {len(members)} rows is too few "
                f"after dropping {drop_smallest}")
        alpha, r2 = fit_slope([r.n for r in kept], [r.f_mean for r in kept])
        out.append(FitResult(model=model, k_dist=k_dist, alpha=alpha,
                             r_squared=r2, points=len(kept)))
    return out
