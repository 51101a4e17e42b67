"""Linear-shrinkage correction of the eigenvalue under test.

When the trailing eigenvalues l_k..l_p are pooled into a noise
estimate, the optimal linear-shrinkage coefficient and its clipping
event beta_LS < 1 perturb the mean and variance of l_k.  This module
computes the shrinkage coefficient itself, the Taylor correction
factors P/Q/B/G conditioned on the clipping event, and the corrected
mean, variance, and test statistic.

Index convention: everything is defined for a test index k with
trailing block l_k..l_p of length m = p - k + 1, and gamma = m/(n+1)
inside the Taylor coefficients.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateSpectrumError, InvalidInputError
from .validation import check_index_range, check_positive_scalar

__all__ = [
    "ShrinkageStats",
    "shrinkage_coefficient",
    "compute_correction_factors",
    "corrected_mean_params",
    "corrected_variance",
    "test_statistic",
    "shrinkage_stats",
]


@dataclass(frozen=True)
class ShrinkageStats:
    """All shrinkage quantities at one test index."""

    k: int
    alpha_ls: float
    beta_ls: float
    tau_hat: float
    indicator: int
    z: float
    P: float
    Q: float
    B: float
    G: float
    kappa_ls: float
    nu_ls: float
    zeta: float
    omega_ls: float
    delta_rho: float


def shrinkage_coefficient(spectrum, k):
    """Optimal linear-shrinkage coefficient over the trailing block l_k..l_p.

    Returns (alpha_ls, beta_ls, tau_hat, indicator, z) where beta_ls =
    min(alpha_ls, 1), indicator = [beta_ls < 1], tau_hat is the
    trailing mean, and z is the trailing moment ratio mean(l^2)/mean(l)^2.
    """
    k = check_index_range(k, 1, spectrum.p, "k")
    block = spectrum.values[k - 1 :]
    m = block.size
    s1 = float(np.sum(block))
    s2 = float(np.sum(block**2))
    if s1 <= 0.0 or s2 <= 0.0:
        raise DegenerateSpectrumError(f"trailing block l_{k}..l_{spectrum.p} has no positive mass")
    tau_hat = s1 / m
    z = (s2 / m) / (s1 / m) ** 2
    numerator = s2 + s1**2
    denominator = (spectrum.n + 1) * (s2 - s1**2 / m)
    if denominator <= 1e-12 * numerator:
        # dispersion-free trailing block: the shrinkage target is exact
        alpha_ls = np.inf
    else:
        alpha_ls = numerator / denominator
    beta_ls = min(alpha_ls, 1.0)
    indicator = 1 if beta_ls < 1.0 else 0
    return float(alpha_ls), float(beta_ls), float(tau_hat), indicator, float(z)


def compute_correction_factors(n, p, k, indicator):
    """Taylor correction factors (P, Q, B, G) at test index k.

    The bracketed correction terms are switched on by the indicator of
    the clipping event beta_LS < 1; indicator = 0 gives P = Q = 1 and
    B = 0.  All dimension denominators use the trailing block length
    m = p - k + 1.
    """
    if n < 2 or p < 2:
        raise InvalidInputError(f"need n >= 2 and p >= 2, got n={n}, p={p}")
    k = check_index_range(k, 1, p, "k")
    if indicator not in (0, 1):
        raise InvalidInputError(f"indicator must be 0 or 1, got {indicator!r}")
    m2 = float(p - k + 1) ** 2
    n1 = float(n + 1)
    n2 = float(n + 2)
    p_term = -1.0 / n2 - 2.0 * n1**2 / (n2**3 * m2)
    q_term = (
        -2.0 / n2
        - 4.0 * n1**2 / (n2**3 * m2)
        + 1.0 / n2**2
        + 2.0 * n1**4 / (n2**4 * m2)
        + 4.0 * n1**2 / (n2**4 * m2)
    )
    P = 1.0 + p_term * indicator
    Q = 1.0 + q_term * indicator
    B = Q - P**2
    G = (p / n) / m2
    return P, Q, B, G


def corrected_mean_params(kappa, v, sigma2_null, P):
    """(kappa_LS, nu_LS) = (P*kappa, P*(v - sigma2) + sigma2).

    nu_LS interpolates between sigma2_null (P = 0) and v (P = 1).
    """
    if P < 0:
        raise InvalidInputError(f"P must be non-negative, got {P!r}")
    return P * kappa, P * (v - sigma2_null) + sigma2_null


def corrected_variance(delta, mean_core, sigma2, P, B, G):
    """zeta^2 = B*delta^2 + delta^2*P^2 + B*mean_core^2 + sigma^4*G."""
    if delta < 0 or B < 0 or G <= 0:
        raise InvalidInputError(f"need delta >= 0, B >= 0, G > 0, got {delta!r}, {B!r}, {G!r}")
    zeta2 = B * delta**2 + delta**2 * P**2 + B * mean_core**2 + sigma2**2 * G
    if zeta2 < 0:
        raise ArithmeticError(f"variance formula produced zeta^2 = {zeta2!r} < 0")
    return zeta2


def test_statistic(l_k, nu_ls, kappa_ls, sigma2_null):
    """z_LS = (l_k - nu_LS)/kappa_LS - sigma2; asymptotically N(lambda_k, omega_LS^2)."""
    kappa_ls = check_positive_scalar(kappa_ls, "kappa_ls")
    return (l_k - nu_ls) / kappa_ls - sigma2_null


def shrinkage_stats(spectrum, k, rho, kappa, v, sigma2_null, delta):
    """Assemble the full shrinkage chain at test index k into ShrinkageStats.

    Args:
        spectrum: EigenSpectrum supplying the trailing block and l_k.
        k: 1-based test index.
        rho: population eigenvalue rho_k feeding the mean core.
        kappa: noise-interaction factor kappa_k.
        v: pairwise interaction bias v_k.
        sigma2_null: noise variance under the null.
        delta: asymptotic standard deviation delta(lambda_k).
    """
    alpha_ls, beta_ls, tau_hat, indicator, z = shrinkage_coefficient(spectrum, k)
    P, Q, B, G = compute_correction_factors(spectrum.n, spectrum.p, k, indicator)
    kappa_ls, nu_ls = corrected_mean_params(kappa, v, sigma2_null, P)
    mean_core = rho * kappa + v - sigma2_null
    zeta = float(np.sqrt(corrected_variance(delta, mean_core, sigma2_null, P, B, G)))
    l_k = float(spectrum.values[k - 1])
    delta_rho = (tau_hat - sigma2_null) - (1.0 - beta_ls) * (tau_hat - l_k) * indicator
    return ShrinkageStats(
        k=k,
        alpha_ls=alpha_ls,
        beta_ls=beta_ls,
        tau_hat=tau_hat,
        indicator=indicator,
        z=z,
        P=P,
        Q=Q,
        B=B,
        G=G,
        kappa_ls=kappa_ls,
        nu_ls=nu_ls,
        zeta=zeta,
        omega_ls=zeta / kappa_ls,
        delta_rho=delta_rho,
    )
