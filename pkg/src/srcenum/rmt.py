"""Baseline sequential RMT estimator.

For an assumed signal count k the noise variance and signal population
eigenvalues are estimated jointly from

    sigma2 * (p - k) = sum_{j>k} l_j + sum_{j<=k} (l_j - rho_j)
    rho_j^2 - rho_j * [l_j + (1 - (p-k)/n) sigma2] + l_j sigma2 = 0

by fixed-point iteration (larger quadratic root).  The estimator then
walks k = 1, 2, ... and accepts H_k while

    l_k > sigma2_hat(k) * (mu_{n,p-k} + s(alpha) * sigma_{n,p-k}),

returning q_hat = k - 1 at the first rejection.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .tracy_widom import detection_threshold
from .validation import check_index_range, check_positive_scalar

__all__ = ["RmtFit", "TestRecord", "EstimateTrace", "solve_rho_sigma", "rmt_estimate"]

SOLVER_RTOL = 1e-10
SOLVER_MAX_ITER = 200


@dataclass(frozen=True)
class RmtFit:
    """Joint signal/noise fit for an assumed signal count k."""

    k: int
    rho_hats: np.ndarray
    sigma2_hat: float
    iterations: int
    converged: bool
    residual: float


@dataclass(frozen=True)
class TestRecord:
    """One executed hypothesis test inside a sequential estimate."""

    k: int
    l_k: float
    threshold: float
    statistic: float
    accepted: bool
    fit: object = None


@dataclass(frozen=True)
class EstimateTrace:
    """Estimated signal count plus the per-k test records behind it."""

    q_hat: int
    per_k: tuple


def _larger_roots(leading, sigma2, coef):
    """Larger root of rho^2 - rho*(l + coef*sigma2) + l*sigma2 per eigenvalue.

    A negative discriminant means the eigenvalue is consistent with
    noise; the repeated-root value keeps the iteration defined while
    signaling bias toward sigma2.
    """
    b = leading + coef * sigma2
    disc = b * b - 4.0 * leading * sigma2
    roots = np.where(disc >= 0.0, (b + np.sqrt(np.maximum(disc, 0.0))) / 2.0, b / 2.0)
    return roots


def solve_rho_sigma(spectrum, k, known_sigma2=None):
    """Fit (rho_1..rho_k, sigma2) for an assumed signal count k.

    With known_sigma2 the noise variance is pinned and the signal
    eigenvalues come from a single quadratic pass.  k = 0 needs no
    iteration either: sigma2_hat is the grand mean.
    """
    p, n = spectrum.p, spectrum.n
    k = check_index_range(k, 0, min(p, n) - 1, "k")
    values = spectrum.values
    leading = values[:k]
    trailing_sum = float(np.sum(values[k:]))
    coef = 1.0 - (p - k) / n

    if known_sigma2 is not None:
        sigma2 = check_positive_scalar(known_sigma2, "known_sigma2")
        rho = _larger_roots(leading, sigma2, coef)
        return RmtFit(k=k, rho_hats=rho, sigma2_hat=sigma2, iterations=0, converged=True, residual=0.0)

    tau0 = trailing_sum / (p - k)
    if k == 0:
        return RmtFit(
            k=0, rho_hats=np.empty(0), sigma2_hat=tau0, iterations=0, converged=True, residual=0.0
        )
    if tau0 <= 0.0:
        raise InvalidInputError("trailing eigenvalue mean must be positive to initialize the fit")

    sigma2 = tau0
    rho = leading.copy()
    converged = False
    residual = np.inf
    iterations = 0
    for iterations in range(1, SOLVER_MAX_ITER + 1):
        rho = _larger_roots(leading, sigma2, coef)
        new_sigma2 = (trailing_sum + float(np.sum(leading - rho))) / (p - k)
        if new_sigma2 <= 0.0:
            # nothing bounds the iterate away from zero; repair and flag
            sigma2 = 1e-12 * tau0
            converged = False
            residual = np.inf
            break
        residual = abs(new_sigma2 - sigma2) / new_sigma2
        sigma2 = new_sigma2
        if residual <= SOLVER_RTOL:
            converged = True
            break
    return RmtFit(
        k=k,
        rho_hats=rho,
        sigma2_hat=sigma2,
        iterations=iterations,
        converged=converged,
        residual=float(residual),
    )


def rmt_estimate(spectrum, alpha, known_sigma2=None):
    """Sequential edge test; q_hat = k - 1 at the first rejected H_k."""
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must lie in (0, 1), got {alpha!r}")
    p, n = spectrum.p, spectrum.n
    k_bound = min(p, n) - 1
    records = []
    q_hat = k_bound
    for k in range(1, k_bound + 1):
        if p - k < 2:
            # threshold constants need effective dimension >= 2; every
            # test so far accepted, so report the last accepted k
            q_hat = k - 1
            break
        if known_sigma2 is not None:
            sigma2, fit = float(known_sigma2), None
        else:
            fit = solve_rho_sigma(spectrum, k)
            sigma2 = fit.sigma2_hat
        threshold = detection_threshold(sigma2, n, p - k, alpha, beta=spectrum.beta)
        l_k = float(spectrum.values[k - 1])
        accepted = l_k > threshold
        records.append(
            TestRecord(k=k, l_k=l_k, threshold=threshold, statistic=l_k, accepted=accepted, fit=fit)
        )
        if not accepted:
            q_hat = k - 1
            break
    return EstimateTrace(q_hat=q_hat, per_k=tuple(records))
