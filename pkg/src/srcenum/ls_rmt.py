"""Sequential estimator with shrinkage-corrected bias removal.

Each step k tests whether the k-th sample eigenvalue exceeds the noise
edge once its interaction bias is subtracted.  The bias estimate uses a
signal-side joint fit at k (for rho_hats and kappa) and a null-side
noise fit at k - 1 (for the threshold), with the linear-shrinkage
correction factors applied to both the mean and the interaction term:

    kappa_ls = P * kappa
    nu_ls    = P * (nu - sigma2_null) + sigma2_null
    accept H_k  iff  l_k - nu_ls > sigma2_null * (mu + s(alpha) * sigma).
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .lawley import interaction_bias
from .rmt import EstimateTrace, solve_rho_sigma
from .shrinkage import compute_correction_factors, corrected_mean_params, shrinkage_coefficient
from .tracy_widom import detection_threshold
from .validation import check_index_range, check_positive_scalar

__all__ = ["LsRmtStepRecord", "ls_rmt_step", "ls_rmt_estimate"]

LAMBDA_FLOOR_RTOL = 1e-6


@dataclass(frozen=True)
class LsRmtStepRecord:
    """Inputs and outcome of the k-th shrinkage-corrected edge test."""

    k: int
    l_k: float
    nu_ls_hat: float
    kappa_ls_hat: float
    v_hat: float
    kappa_hat: float
    sigma2_signal: float
    sigma2_null: float
    threshold: float
    accepted: bool
    indicator: int


def _step(spectrum, k, alpha, signal_fit, null_sigma2):
    p, n = spectrum.p, spectrum.n
    rho = signal_fit.rho_hats
    sigma2_signal = signal_fit.sigma2_hat

    v_hat = interaction_bias(rho, k, n)
    lam = max(float(rho[k - 1]) - sigma2_signal, LAMBDA_FLOOR_RTOL * sigma2_signal)
    kappa_hat = 1.0 + (p - k) * sigma2_signal / (n * lam)

    _, _, _, indicator, _ = shrinkage_coefficient(spectrum, k)
    factors = compute_correction_factors(n, p, k, indicator)
    kappa_ls, nu_ls = corrected_mean_params(kappa_hat, v_hat, null_sigma2, factors[0])

    threshold = detection_threshold(null_sigma2, n, p - k + 1, alpha, beta=spectrum.beta)
    l_k = float(spectrum.values[k - 1])
    accepted = l_k - nu_ls > threshold
    return LsRmtStepRecord(
        k=k,
        l_k=l_k,
        nu_ls_hat=nu_ls,
        kappa_ls_hat=kappa_ls,
        v_hat=v_hat,
        kappa_hat=kappa_hat,
        sigma2_signal=sigma2_signal,
        sigma2_null=null_sigma2,
        threshold=threshold,
        accepted=accepted,
        indicator=indicator,
    )


def ls_rmt_step(spectrum, k, alpha, known_sigma2=None):
    """Run the k-th test in isolation (k >= 1)."""
    k = check_index_range(k, 1, min(spectrum.p, spectrum.n) - 1, "k")
    if known_sigma2 is not None:
        sigma2 = check_positive_scalar(known_sigma2, "known_sigma2")
        signal_fit = solve_rho_sigma(spectrum, k, known_sigma2=sigma2)
        return _step(spectrum, k, alpha, signal_fit, sigma2)
    signal_fit = solve_rho_sigma(spectrum, k)
    null_sigma2 = solve_rho_sigma(spectrum, k - 1).sigma2_hat
    return _step(spectrum, k, alpha, signal_fit, null_sigma2)


def ls_rmt_estimate(spectrum, alpha, known_sigma2=None):
    """Sequential estimate; q_hat = k - 1 at the first rejected H_k."""
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must lie in (0, 1), got {alpha!r}")
    p, n = spectrum.p, spectrum.n
    k_bound = min(p, n) - 1
    records = []
    q_hat = k_bound
    if known_sigma2 is not None:
        known_sigma2 = check_positive_scalar(known_sigma2, "known_sigma2")
        null_fit = None
    else:
        null_fit = solve_rho_sigma(spectrum, 0)
    for k in range(1, k_bound + 1):
        if known_sigma2 is not None:
            signal_fit = solve_rho_sigma(spectrum, k, known_sigma2=known_sigma2)
            null_sigma2 = known_sigma2
        else:
            signal_fit = solve_rho_sigma(spectrum, k)
            null_sigma2 = null_fit.sigma2_hat
        record = _step(spectrum, k, alpha, signal_fit, null_sigma2)
        records.append(record)
        if not record.accepted:
            q_hat = k - 1
            break
        null_fit = signal_fit
    return EstimateTrace(q_hat=q_hat, per_k=tuple(records))
