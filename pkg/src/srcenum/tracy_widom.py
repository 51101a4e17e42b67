"""Tracy-Widom edge law for the largest sample-covariance eigenvalue.

For n white Gaussian samples in dimension p the largest eigenvalue l1
of the sample covariance satisfies

    Pr[ l1 < sigma^2 (mu_np + x * sigma_np) ]  ->  F_beta(x),

with centering and scaling

    mu_np    = (1/n) (sqrt(n - 1/2) + sqrt(p - 1/2))^2
    sigma_np = sqrt(mu_np / n) (1/sqrt(n - 1/2) + 1/sqrt(p - 1/2))^(1/3).

F_1 is evaluated from a precomputed table (data/tw_beta1.txt, generated
offline by Painleve II integration; see tools/make_tw_table.py) with
monotone cubic interpolation.  Quantiles come from interpolating the
inverse on the strictly increasing part of the grid.  Outside the
tabulated range the CDF is extended by exponential tails; the
extension is meant for reporting probabilities, not for thresholds.
"""

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np
from scipy.interpolate import PchipInterpolator

from .exceptions import InvalidInputError, OutOfRangeError, UnsupportedFieldError
from .validation import check_positive_scalar

_TABLE_FILE = "tw_beta1.txt"


@dataclass(frozen=True)
class TwThresholdParams:
    """Centering/scaling constants and quantile for one edge test."""

    mu: float
    sigma: float
    s_alpha: float
    alpha: float
    beta: int = 1


class TwQuantileTable:
    """Tabulated F_beta with monotone-cubic CDF and inverse."""

    def __init__(self, x, f):
        x = np.asarray(x, dtype=float)
        f = np.asarray(f, dtype=float)
        if x.ndim != 1 or x.shape != f.shape or x.size < 4:
            raise InvalidInputError("table needs matching 1-d x and F arrays")
        if np.any(np.diff(x) <= 0):
            raise InvalidInputError("table x grid must be strictly increasing")
        if np.any(np.diff(f) < 0):
            raise InvalidInputError("table F values must be non-decreasing")
        self.x = x
        self.f = f
        self._cdf = PchipInterpolator(x, f)
        keep = np.concatenate(([True], np.diff(f) > 0))
        self._inv = PchipInterpolator(f[keep], x[keep])
        self._f_lo = f[keep][0]
        self._f_hi = f[keep][-1]
        # log-slopes of the tails, for extrapolated reporting
        self._rate_lo = (np.log(f[1]) - np.log(f[0])) / (x[1] - x[0])
        s_hi = np.maximum(1.0 - f, 1e-300)
        self._rate_hi = (np.log(s_hi[-1]) - np.log(s_hi[-2])) / (x[-1] - x[-2])

    @classmethod
    def from_package_data(cls):
        text = resources.files("srcenum.data").joinpath(_TABLE_FILE).read_text()
        rows = [line.split() for line in text.splitlines() if line and not line.startswith("#")]
        data = np.array(rows, dtype=float)
        return cls(data[:, 0], data[:, 1])

    def cdf(self, value):
        value = float(value)
        if value < self.x[0]:
            return float(self.f[0] * np.exp(self._rate_lo * (value - self.x[0])))
        if value > self.x[-1]:
            tail = (1.0 - self.f[-1]) * np.exp(self._rate_hi * (value - self.x[-1]))
            return float(1.0 - tail)
        return float(self._cdf(value))

    def quantile(self, prob):
        prob = float(prob)
        if not self._f_lo <= prob <= self._f_hi:
            raise OutOfRangeError(
                f"probability {prob!r} outside tabulated coverage "
                f"[{self._f_lo:.3e}, {1.0 - self._f_hi:.3e} below 1]"
            )
        return float(self._inv(prob))


@lru_cache(maxsize=1)
def _table(beta=1):
    if beta != 1:
        raise UnsupportedFieldError("only the real-valued ensemble (beta=1) is tabulated")
    return TwQuantileTable.from_package_data()


def tw_cdf(value, beta=1):
    """F_beta evaluated at ``value`` (extrapolated tails outside the table)."""
    return _table(beta).cdf(value)


def tw_quantile(alpha, beta=1):
    """Upper-tail quantile s(alpha): the x with F_beta(x) = 1 - alpha."""
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must lie in (0, 1), got {alpha!r}")
    return _table(beta).quantile(1.0 - alpha)


def centering_mu(n, p):
    """Edge centering mu_np for n samples in dimension p.

    Valid for n >= 1, p >= 1; threshold construction additionally
    requires p >= 2 (see threshold_params).
    """
    if n < 1 or p < 1:
        raise InvalidInputError(f"n and p must be >= 1, got n={n}, p={p}")
    return float((np.sqrt(n - 0.5) + np.sqrt(p - 0.5)) ** 2 / n)


def scaling_sigma(n, p):
    """Edge scaling sigma_np for n samples in dimension p."""
    mu = centering_mu(n, p)
    root = 1.0 / np.sqrt(n - 0.5) + 1.0 / np.sqrt(p - 0.5)
    return float(np.sqrt(mu / n) * root ** (1.0 / 3.0))


def threshold_params(n, p_eff, alpha, beta=1):
    """Constants for one sequential edge test at effective dimension p_eff."""
    if p_eff < 2:
        raise InvalidInputError(f"effective dimension must be >= 2, got {p_eff}")
    return TwThresholdParams(
        mu=centering_mu(n, p_eff),
        sigma=scaling_sigma(n, p_eff),
        s_alpha=tw_quantile(alpha, beta=beta),
        alpha=float(alpha),
        beta=beta,
    )


def detection_threshold(sigma2, n, p_eff, alpha, beta=1):
    """Acceptance threshold sigma^2 * (mu_np + s(alpha) * sigma_np)."""
    sigma2 = check_positive_scalar(sigma2, "sigma2")
    params = threshold_params(n, p_eff, alpha, beta=beta)
    return sigma2 * (params.mu + params.s_alpha * params.sigma)
