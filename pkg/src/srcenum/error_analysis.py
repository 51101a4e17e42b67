"""Closed-form under/over/mis-estimation probabilities.

The corrected statistic at the last signal index is asymptotically
normal, so under-estimation has a closed form through the standard
normal CDF; over-estimation of the uncorrected sequential test follows
from shifting the Tracy-Widom threshold by the interaction bias of the
first noise eigenvalue.  All formulas take plain floats so they work
with population parameters or with plug-in estimates; statistic_law()
assembles the inputs from a population scenario.

Also houses the classic log-likelihood baselines (AIC, MDL) used for
comparison curves.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateSpectrumError, InvalidInputError
from .lawley import interaction_bias, kappa_factor, signal_asymptotics
from .shrinkage import (
    compute_correction_factors,
    corrected_mean_params,
    corrected_variance,
)
from .tracy_widom import threshold_params, tw_cdf, tw_quantile
from .validation import check_positive_scalar

__all__ = [
    "ErrorProbabilities",
    "StatisticLaw",
    "standard_normal_cdf",
    "p_ue_ls_rmt",
    "p_e_ls_rmt",
    "p_ue_rmt",
    "p_oe_rmt",
    "delta_increased_ue",
    "statistic_law",
    "theoretical_error_probabilities",
    "aic_mdl_baseline",
]

_SQRT2 = math.sqrt(2.0)
_ADD_TOL = 1e-12


@dataclass(frozen=True)
class ErrorProbabilities:
    """Under/over/mis-estimation triple, plus the increase vs the corrected test."""

    p_ue: float
    p_oe: float
    p_e: float
    delta_inc_ue: float = 0.0

    def __post_init__(self):
        for name in ("p_ue", "p_oe", "p_e"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidInputError(f"{name} must lie in [0, 1], got {value!r}")
        if abs(self.p_e - (self.p_ue + self.p_oe)) > _ADD_TOL:
            raise InvalidInputError("p_e must equal p_ue + p_oe")
        if not -1.0 <= self.delta_inc_ue <= 1.0:
            raise InvalidInputError("delta_inc_ue must lie in [-1, 1]")


def _make_probabilities(p_ue, p_oe, delta_inc_ue=0.0):
    """Clip jointly so p_e = p_ue + p_oe survives the [0, 1] cap."""
    p_ue = min(1.0, max(0.0, p_ue))
    p_oe = min(1.0 - p_ue, max(0.0, p_oe))
    return ErrorProbabilities(p_ue=p_ue, p_oe=p_oe, p_e=p_ue + p_oe, delta_inc_ue=delta_inc_ue)


def standard_normal_cdf(x):
    return 0.5 * math.erfc(-x / _SQRT2)


def p_ue_ls_rmt(omega_ls, kappa_ls, lambda_q, sigma2, phi, nu_ls):
    """Probability that the corrected statistic falls below the threshold."""
    check_positive_scalar(omega_ls, "omega_ls")
    check_positive_scalar(kappa_ls, "kappa_ls")
    arg = ((phi + nu_ls) / kappa_ls - sigma2 - lambda_q) / omega_ls
    return standard_normal_cdf(arg)


def p_e_ls_rmt(alpha, p_ue):
    for name, value in (("alpha", alpha), ("p_ue", p_ue)):
        if not 0.0 <= value <= 1.0:
            raise InvalidInputError(f"{name} must lie in [0, 1], got {value!r}")
    return min(1.0, alpha + p_ue)


def p_ue_rmt(omega_ls, kappa_ls, lambda_q, sigma2, phi):
    return p_ue_ls_rmt(omega_ls, kappa_ls, lambda_q, sigma2, phi, 0.0)


def p_oe_rmt(sigma_np, sigma2, nu_ls, alpha, beta=1):
    """False-alarm rate of the uncorrected test when the tested eigenvalue
    carries interaction bias nu_ls."""
    check_positive_scalar(sigma_np, "sigma_np")
    check_positive_scalar(sigma2, "sigma2")
    s_alpha = tw_quantile(alpha, beta=beta)
    return 1.0 - tw_cdf(s_alpha - nu_ls / (sigma2 * sigma_np), beta=beta)


def delta_increased_ue(omega_ls, kappa_ls, lambda_q, sigma2, phi, nu_ls, sigma_np, alpha):
    """Mis-estimation increase of the uncorrected test, single shared nu_ls."""
    p_ue_corrected = p_ue_ls_rmt(omega_ls, kappa_ls, lambda_q, sigma2, phi, nu_ls)
    e_corrected = p_e_ls_rmt(alpha, p_ue_corrected)
    e_plain = min(
        1.0,
        p_ue_rmt(omega_ls, kappa_ls, lambda_q, sigma2, phi)
        + p_oe_rmt(sigma_np, sigma2, nu_ls, alpha),
    )
    return e_plain - e_corrected


@dataclass(frozen=True)
class StatisticLaw:
    """Population-level parameters of the corrected statistic under H_q.

    Signal-side quantities (nu, kappa, and their corrected versions,
    zeta, omega_ls) describe l_q; nu_ls_next is the corrected bias of
    the first noise eigenvalue, which drives over-estimation of the
    uncorrected test.
    """

    q: int
    nu: float
    kappa: float
    tau: float
    delta: float
    nu_ls: float
    kappa_ls: float
    zeta: float
    omega_ls: float
    nu_ls_next: float
    phi: float
    mu_np: float
    sigma_np: float
    s_alpha: float


def _noise_bias_ls(rhos_signal, sigma2, n, p, k, indicator):
    """Corrected interaction bias of the noise eigenvalue tested at step k."""
    rhos = np.append(rhos_signal, sigma2)
    nu = interaction_bias(rhos, len(rhos), n)
    factors = compute_correction_factors(n, p, k, indicator)
    return factors[0] * (nu - sigma2) + sigma2


def statistic_law(scenario, alpha, indicator=1):
    """Assemble the closed-form inputs from population parameters.

    Requires q >= 1 and a supercritical smallest signal.
    """
    if indicator not in (0, 1):
        raise InvalidInputError(f"indicator must be 0 or 1, got {indicator!r}")
    q = scenario.q
    if q < 1:
        raise InvalidInputError("statistic_law needs at least one signal")
    p, n, sigma2 = scenario.p, scenario.n, scenario.sigma2
    lam_q = scenario.lambdas[q - 1]
    rhos_signal = np.asarray(scenario.lambdas, dtype=float) + sigma2

    tau, delta = signal_asymptotics(lam_q, sigma2, p, q, n, beta=scenario.beta)
    nu = interaction_bias(rhos_signal, q, n)
    kappa = kappa_factor(lam_q, sigma2, p, q, n)

    factor_p, _, factor_b, factor_g = compute_correction_factors(n, p, q, indicator)
    kappa_ls, nu_ls = corrected_mean_params(kappa, nu, sigma2, factor_p)
    rho_q = float(rhos_signal[q - 1])
    mean_core = rho_q * kappa + nu - sigma2
    zeta2 = corrected_variance(delta, mean_core, sigma2, factor_p, factor_b, factor_g)
    zeta = math.sqrt(zeta2)
    omega_ls = zeta / kappa_ls

    nu_ls_next = _noise_bias_ls(rhos_signal, sigma2, n, p, q + 1, indicator)

    params = threshold_params(n, p - q + 1, alpha, beta=scenario.beta)
    phi = sigma2 * (params.mu + params.s_alpha * params.sigma)
    return StatisticLaw(
        q=q,
        nu=nu,
        kappa=kappa,
        tau=tau,
        delta=delta,
        nu_ls=nu_ls,
        kappa_ls=kappa_ls,
        zeta=zeta,
        omega_ls=omega_ls,
        nu_ls_next=nu_ls_next,
        phi=phi,
        mu_np=params.mu,
        sigma_np=params.sigma,
        s_alpha=params.s_alpha,
    )


def theoretical_error_probabilities(scenario, alpha, indicator=1):
    """Closed-form error probabilities for both sequential tests.

    Returns {"ls-rmt": ErrorProbabilities, "rmt": ErrorProbabilities};
    the rmt entry carries delta_inc_ue relative to the corrected test.
    """
    p, n, sigma2 = scenario.p, scenario.n, scenario.sigma2
    q = scenario.q
    if q == 0:
        sigma_np = threshold_params(n, p + 1, alpha, beta=scenario.beta).sigma
        nu_ls_next = _noise_bias_ls(np.empty(0), sigma2, n, p, 1, indicator)
        ue_ls = ue_rmt = 0.0
        oe_rmt = p_oe_rmt(sigma_np, sigma2, nu_ls_next, alpha, beta=scenario.beta)
    else:
        law = statistic_law(scenario, alpha, indicator=indicator)
        lam_q = scenario.lambdas[q - 1]
        ue_ls = p_ue_ls_rmt(law.omega_ls, law.kappa_ls, lam_q, sigma2, law.phi, law.nu_ls)
        ue_rmt = p_ue_rmt(law.omega_ls, law.kappa_ls, lam_q, sigma2, law.phi)
        oe_rmt = p_oe_rmt(law.sigma_np, sigma2, law.nu_ls_next, alpha, beta=scenario.beta)
    ls = _make_probabilities(ue_ls, alpha)
    rmt = _make_probabilities(ue_rmt, oe_rmt)
    return {
        "ls-rmt": ls,
        "rmt": _make_probabilities(ue_rmt, oe_rmt, delta_inc_ue=rmt.p_e - ls.p_e),
    }


def aic_mdl_baseline(spectrum, criterion):
    """Classic penalized log-likelihood order selection over k."""
    crit = str(criterion).lower()
    if crit not in ("aic", "mdl"):
        raise InvalidInputError(f"criterion must be 'aic' or 'mdl', got {criterion!r}")
    p, n = spectrum.p, spectrum.n
    if p < 2:
        raise InvalidInputError("need at least two eigenvalues")
    values = spectrum.values
    if np.any(values <= 0.0):
        raise DegenerateSpectrumError("log-likelihood needs strictly positive eigenvalues")
    log_values = np.log(values)

    best_k, best_score = 0, math.inf
    for k in range(0, min(p, n)):
        block = values[k:]
        m = p - k
        log_ratio = float(np.mean(log_values[k:])) - math.log(float(np.mean(block)))
        fit = -n * m * log_ratio
        penalty = k * (2 * p - k)
        if crit == "mdl":
            penalty *= 0.5 * math.log(n)
        score = fit + penalty
        if score < best_score:
            best_k, best_score = k, score
    return best_k
