"""Seeded Monte-Carlo sweeps over scenario grids.

Every trial draws one spectrum and feeds it to every configured
estimator (paired comparison), so between-estimator differences are not
polluted by independent sampling noise.  Trial seeds derive from
SeedSequence(master, spawn_key=(point, trial)) and are therefore stable
under any execution schedule.
"""

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .error_analysis import aic_mdl_baseline
from .exceptions import InvalidInputError, SrcenumError
from .ls_rmt import ls_rmt_estimate
from .rmt import rmt_estimate
from .spectrum import SpikedScenario, draw_snapshots, eigen_spectrum, sample_covariance

__all__ = [
    "ESTIMATOR_NAMES",
    "DEFAULT_SEED",
    "SEED_ENV_VAR",
    "GridPoint",
    "SweepConfig",
    "PointResult",
    "SweepResult",
    "run_sweep",
    "figure_preset",
    "write_results",
    "read_results",
]

ESTIMATOR_NAMES = ("ls-rmt", "rmt", "aic", "mdl")
DEFAULT_SEED = 12345
SEED_ENV_VAR = "SRCENUM_SEED"

RESULT_HEADER = [
    "preset",
    "p",
    "n",
    "q_true",
    "estimator",
    "alpha",
    "trials",
    "seed",
    "p_under",
    "p_correct",
    "p_over",
    "p_mis",
    "errors",
]


@dataclass(frozen=True)
class GridPoint:
    label: str
    scenario: SpikedScenario


@dataclass(frozen=True)
class SweepConfig:
    name: str
    points: tuple
    estimators: tuple
    alpha: float
    trials: int
    seed: int
    known_sigma2: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.points:
            raise InvalidInputError("sweep needs at least one grid point")
        if not self.estimators:
            raise InvalidInputError("sweep needs at least one estimator")
        for name in self.estimators:
            if name not in ESTIMATOR_NAMES:
                raise InvalidInputError(
                    f"unknown estimator {name!r}; choose from {ESTIMATOR_NAMES}"
                )
        if not 0.0 < self.alpha < 1.0:
            raise InvalidInputError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.trials < 1:
            raise InvalidInputError("trials must be >= 1")
        if self.workers < 1:
            raise InvalidInputError("workers must be >= 1")
        for point in self.points:
            if not isinstance(point.scenario, SpikedScenario):
                raise InvalidInputError("grid points must hold SpikedScenario instances")


@dataclass(frozen=True)
class PointResult:
    """Tally for one (grid point, estimator) pair."""

    label: str
    p: int
    n: int
    q_true: int
    estimator: str
    alpha: float
    trials: int
    seed: int
    n_under: int
    n_correct: int
    n_over: int
    n_errors: int
    wall_time: float = 0.0

    def __post_init__(self):
        total = self.n_under + self.n_correct + self.n_over + self.n_errors
        if total != self.trials:
            raise InvalidInputError(
                f"counts sum to {total}, expected trials={self.trials}"
            )

    @property
    def p_under(self):
        return self.n_under / self.trials

    @property
    def p_correct(self):
        return self.n_correct / self.trials

    @property
    def p_over(self):
        return self.n_over / self.trials

    @property
    def p_mis(self):
        return (self.n_under + self.n_over) / self.trials


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rows: tuple


def run_estimator(name, spectrum, alpha, known_sigma2=None):
    """Dispatch a single estimate; known_sigma2 only affects the edge tests."""
    if name == "ls-rmt":
        return ls_rmt_estimate(spectrum, alpha, known_sigma2=known_sigma2).q_hat
    if name == "rmt":
        return rmt_estimate(spectrum, alpha, known_sigma2=known_sigma2).q_hat
    if name in ("aic", "mdl"):
        return aic_mdl_baseline(spectrum, name)
    raise InvalidInputError(f"unknown estimator {name!r}")


def _run_point(task):
    point_index, point, estimators, alpha, trials, seed, known_sigma2 = task
    scenario = point.scenario
    q_true = scenario.q
    sigma2 = scenario.sigma2 if known_sigma2 else None
    counts = {name: [0, 0, 0, 0] for name in estimators}
    elapsed = dict.fromkeys(estimators, 0.0)
    for t in range(trials):
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(point_index, t))
        rng = np.random.Generator(np.random.Philox(ss))
        snapshots = draw_snapshots(scenario, rng)
        spectrum = eigen_spectrum(sample_covariance(snapshots), scenario.n, beta=scenario.beta)
        for name in estimators:
            tally = counts[name]
            start = time.perf_counter()
            try:
                q_hat = run_estimator(name, spectrum, alpha, known_sigma2=sigma2)
            except (SrcenumError, ArithmeticError):
                tally[3] += 1
                continue
            finally:
                elapsed[name] += time.perf_counter() - start
            if q_hat < q_true:
                tally[0] += 1
            elif q_hat == q_true:
                tally[1] += 1
            else:
                tally[2] += 1
    rows = []
    for name in estimators:
        under, correct, over, errors = counts[name]
        rows.append(
            PointResult(
                label=point.label,
                p=scenario.p,
                n=scenario.n,
                q_true=q_true,
                estimator=name,
                alpha=alpha,
                trials=trials,
                seed=seed,
                n_under=under,
                n_correct=correct,
                n_over=over,
                n_errors=errors,
                wall_time=elapsed[name],
            )
        )
    return rows


def run_sweep(config):
    """Run every (point, trial, estimator) cell; deterministic for a fixed
    config and environment."""
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise InvalidInputError(
                f"{SEED_ENV_VAR} must be an integer, got {env_seed!r}"
            ) from None
    else:
        seed = config.seed

    tasks = [
        (i, point, config.estimators, config.alpha, config.trials, seed, config.known_sigma2)
        for i, point in enumerate(config.points)
    ]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            per_point = list(pool.map(_run_point, tasks))
    else:
        per_point = [_run_point(task) for task in tasks]
    rows = tuple(row for rows in per_point for row in rows)
    return SweepResult(config=replace(config, seed=seed), rows=rows)


_RATIO_HALF_P = (16, 24, 32, 48, 64, 96, 128)
_RATIO_TWO_P = (24, 32, 48, 64, 96, 128)
_N_GRID = (24, 32, 48, 64, 96, 128, 192, 256)

_THREE_SIGNALS = (150.0, 120.0, 100.0)
_NINE_SIGNALS = (10.0, 10.0, 9.0, 8.0, 7.0, 6.0, 5.0, 4.0, 2.5)
_NINE_STRONG = (16.0, 15.0, 12.0, 12.0, 12.0, 10.0, 10.0, 8.0, 6.0)
_ELEVEN_SIGNALS = (12.0, 10.0, 9.0, 8.0, 7.0, 7.0, 6.0, 6.0, 5.0, 4.0, 2.5)

FIG7_LAMBDA_POINTS = 24
FIG7_LAMBDA_SPAN = (0.1, 8.0)


def _points_over_p(name, p_grid, n_of_p, lambdas):
    return tuple(
        GridPoint(label=name, scenario=SpikedScenario(p=p, n=n_of_p(p), lambdas=lambdas))
        for p in p_grid
    )


def fig7_lambda_grid(sigma2=1.0):
    """Log-spaced signal strengths bracketing the detectability limit."""
    lam_det = np.sqrt(0.5) * sigma2
    lo, hi = FIG7_LAMBDA_SPAN
    return np.geomspace(lo * lam_det, hi * lam_det, FIG7_LAMBDA_POINTS)


def figure_preset(name, trials=2000, seed=DEFAULT_SEED, alpha=0.005, estimators=None, workers=1):
    """Preconfigured sweep matching one of the reference experiments."""
    edge_pair = ("ls-rmt", "rmt")
    all_four = ESTIMATOR_NAMES

    def n_ratio_half(p):
        return 2 * p

    def n_ratio_two(p):
        return p // 2

    if name == "fig1a":
        points = _points_over_p(name, _RATIO_HALF_P, n_ratio_half, ())
        default_est, known = edge_pair, True
    elif name == "fig1b":
        points = _points_over_p(name, _RATIO_HALF_P, n_ratio_half, _THREE_SIGNALS)
        default_est, known = edge_pair, True
    elif name == "fig2a":
        points = _points_over_p(name, _RATIO_HALF_P, n_ratio_half, ())
        default_est, known = edge_pair, False
    elif name == "fig2b":
        points = _points_over_p(name, _RATIO_HALF_P, n_ratio_half, _THREE_SIGNALS)
        default_est, known = edge_pair, False
    elif name == "fig3":
        points = _points_over_p(name, _RATIO_HALF_P, n_ratio_half, ())
        default_est, known = all_four, False
    elif name == "fig4":
        points = _points_over_p(name, _RATIO_HALF_P, n_ratio_half, _NINE_SIGNALS)
        default_est, known = all_four, False
    elif name == "fig5":
        points = _points_over_p(name, _RATIO_TWO_P, n_ratio_two, _NINE_STRONG)
        default_est, known = all_four, False
    elif name == "fig6":
        points = tuple(
            GridPoint(label=name, scenario=SpikedScenario(p=50, n=n, lambdas=_ELEVEN_SIGNALS))
            for n in _N_GRID
        )
        default_est, known = all_four, False
    elif name == "fig7":
        points = tuple(
            GridPoint(
                label=f"fig7@lambda1={lam:.12g}",
                scenario=SpikedScenario(p=160, n=320, lambdas=(float(lam),)),
            )
            for lam in fig7_lambda_grid()
        )
        default_est, known = all_four, False
    else:
        raise InvalidInputError(f"unknown preset {name!r}")

    return SweepConfig(
        name=name,
        points=points,
        estimators=tuple(estimators) if estimators is not None else default_est,
        alpha=alpha,
        trials=trials,
        seed=seed,
        known_sigma2=known,
        workers=workers,
    )


def write_results(result, path):
    """Persist rows under the fixed CSV schema, stable row order."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RESULT_HEADER)
        for row in result.rows:
            writer.writerow(
                [
                    row.label,
                    row.p,
                    row.n,
                    row.q_true,
                    row.estimator,
                    repr(row.alpha),
                    row.trials,
                    row.seed,
                    repr(row.p_under),
                    repr(row.p_correct),
                    repr(row.p_over),
                    repr(row.p_mis),
                    row.n_errors,
                ]
            )


def read_results(path):
    """Read back a results CSV; counts are reconstructed exactly."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInputError(f"{path}: empty results file") from None
        if header != RESULT_HEADER:
            raise InvalidInputError(f"{path}: unexpected header {header!r}")
        rows = []
        for lineno, fields in enumerate(reader, start=2):
            if not fields:
                continue
            if len(fields) != len(RESULT_HEADER):
                raise InvalidInputError(
                    f"{path}: line {lineno}: expected {len(RESULT_HEADER)} fields"
                )
            try:
                trials = int(fields[6])
                row = PointResult(
                    label=fields[0],
                    p=int(fields[1]),
                    n=int(fields[2]),
                    q_true=int(fields[3]),
                    estimator=fields[4],
                    alpha=float(fields[5]),
                    trials=trials,
                    seed=int(fields[7]),
                    n_under=round(float(fields[8]) * trials),
                    n_correct=round(float(fields[9]) * trials),
                    n_over=round(float(fields[10]) * trials),
                    n_errors=int(fields[12]),
                )
            except (ValueError, InvalidInputError) as exc:
                raise InvalidInputError(f"{path}: line {lineno}: {exc}") from None
            if abs(row.p_mis - float(fields[11])) > 1e-12:
                raise InvalidInputError(f"{path}: line {lineno}: inconsistent p_mis")
            rows.append(row)
    return rows
