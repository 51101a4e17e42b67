"""Finite-sample mean expansion for signal eigenvalues.

For population eigenvalues rho_1 > ... > rho_q above noise sigma^2
the j-th sample eigenvalue has, to first order in 1/n,

    E[l_j] = rho_j * kappa_j + v_j

where kappa_j = 1 + (p - q) sigma^2 / (n lambda_j) collects the
interaction with the p - q noise directions (lambda_j = rho_j -
sigma^2), and v_j is the pairwise signal interaction

    v_j = (rho_j / n) * sum_{i != j} rho_i / (rho_j - rho_i).

The supercritical asymptotics of l_j itself are

    tau(lambda)   = (lambda + sigma^2)(1 + (p - q) sigma^2 / (n lambda))
    delta(lambda) = (lambda + sigma^2) sqrt((2 / (beta n)) (1 - (p - q) sigma^4 / (n lambda^2)))

valid for lambda > sigma^2 sqrt((p - q) / n).
"""

import numpy as np

from .exceptions import InvalidInputError, PhaseTransitionError
from .validation import as_float_vector, check_descending, check_index_range, check_positive_scalar

__all__ = [
    "interaction_bias",
    "kappa_factor",
    "signal_asymptotics",
    "expected_eigenvalue",
]

# Relative gap below which a denominator of the pairwise sum is clamped
# instead of letting the division explode.
_GAP_RTOL = 1e-8


def interaction_bias(rhos, j, n):
    """Pairwise interaction term v_j for the j-th of q population eigenvalues.

    Args:
        rhos: population eigenvalues rho_1 >= ... >= rho_q (signal part only).
        j: 1-based index of the eigenvalue whose bias is wanted.
        n: sample count.

    Denominators with |rho_j - rho_i| < 1e-8 * rho_j are clamped to
    +-1e-8 * rho_j, keeping their sign (ties take the sign implied by
    the index order).  Estimated eigenvalues can collide, and a bounded
    term beats an exception in the threshold rule downstream.
    """
    rhos = check_descending(as_float_vector(rhos, "rhos"), "rhos")
    j = check_index_range(j, 1, rhos.size, "j")
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    rho_j = rhos[j - 1]
    floor = _GAP_RTOL * abs(rho_j)
    total = 0.0
    for i, rho_i in enumerate(rhos, start=1):
        if i == j:
            continue
        gap = rho_j - rho_i
        if abs(gap) < floor:
            sign = np.sign(gap) if gap != 0 else (-1.0 if i < j else 1.0)
            gap = sign * floor
        total += rho_i / gap
    return float(rho_j / n * total)


def kappa_factor(lam, sigma2, p, q, n):
    """Noise-interaction factor kappa = 1 + (p - q) sigma^2 / (n lambda)."""
    lam = check_positive_scalar(lam, "lam")
    sigma2 = check_positive_scalar(sigma2, "sigma2")
    if not 0 <= q < p:
        raise InvalidInputError(f"need 0 <= q < p, got q={q}, p={p}")
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    return 1.0 + (p - q) * sigma2 / (n * lam)


def signal_asymptotics(lam, sigma2, p, q, n, beta=1):
    """Limiting location tau and scale delta of a supercritical sample eigenvalue.

    Raises PhaseTransitionError when lambda <= sigma^2 sqrt((p - q) / n),
    where the eigenvalue no longer separates from the bulk and the
    expansion is meaningless.
    """
    lam = check_positive_scalar(lam, "lam")
    sigma2 = check_positive_scalar(sigma2, "sigma2")
    if beta not in (1, 2):
        raise InvalidInputError(f"beta must be 1 or 2, got {beta!r}")
    threshold = sigma2 * np.sqrt((p - q) / n)
    if lam <= threshold:
        raise PhaseTransitionError(
            f"lambda={lam!r} is at or below the detectability threshold {threshold!r}"
        )
    tau = (lam + sigma2) * kappa_factor(lam, sigma2, p, q, n)
    inner = 1.0 - (p - q) * sigma2**2 / (n * lam**2)
    delta = (lam + sigma2) * np.sqrt(2.0 / (beta * n) * inner)
    return float(tau), float(delta)


def expected_eigenvalue(rhos, j, sigma2, p, n, q=None):
    """First-order mean E[l_j] = rho_j * kappa_j + v_j for a signal eigenvalue."""
    rhos = check_descending(as_float_vector(rhos, "rhos"), "rhos")
    q = rhos.size if q is None else q
    j = check_index_range(j, 1, rhos.size, "j")
    sigma2 = check_positive_scalar(sigma2, "sigma2")
    lam = rhos[j - 1] - sigma2
    if lam <= 0:
        raise InvalidInputError(f"rho_{j} must exceed sigma2 for a signal eigenvalue")
    kappa = kappa_factor(lam, sigma2, p, q, n)
    return float(rhos[j - 1] * kappa + interaction_bias(rhos, j, n))
