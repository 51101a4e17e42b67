"""Spiked-covariance scenarios and sample-covariance spectra.

A scenario is q signal eigenvalues lambda_1 >= ... >= lambda_q > 0 on
top of white noise sigma^2 in dimension p, observed through n i.i.d.
Gaussian snapshots.  The population covariance eigenvalues are

    rho_j = lambda_j + sigma^2   (j <= q),    rho_j = sigma^2  (j > q).

Everything downstream consumes the eigenvalues of the sample
covariance S = (1/n) sum_t x_t x_t^T in descending order.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, UnsupportedFieldError
from .validation import as_float_vector, check_descending, check_positive_scalar

__all__ = [
    "SpikedScenario",
    "EigenSpectrum",
    "population_eigenvalues",
    "draw_snapshots",
    "sample_covariance",
    "eigen_spectrum",
    "read_eigenvalue_csv",
    "write_eigenvalue_csv",
]


@dataclass(frozen=True)
class SpikedScenario:
    """Population model: q supercritical-or-not spikes over white noise."""

    p: int
    n: int
    lambdas: tuple = ()
    sigma2: float = 1.0
    beta: int = 1

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise InvalidInputError(f"p and n must be >= 1, got p={self.p}, n={self.n}")
        check_positive_scalar(self.sigma2, "sigma2")
        if self.beta not in (1, 2):
            raise InvalidInputError(f"beta must be 1 or 2, got {self.beta!r}")
        lams = tuple(float(v) for v in self.lambdas)
        object.__setattr__(self, "lambdas", lams)
        if lams:
            arr = as_float_vector(lams, "lambdas")
            check_descending(arr, "lambdas")
            if arr[-1] <= 0:
                raise InvalidInputError("signal eigenvalues must be positive")
        if len(lams) >= min(self.p, self.n):
            raise InvalidInputError(
                f"number of signals must be < min(p, n) = {min(self.p, self.n)}, got {len(lams)}"
            )

    @property
    def q(self):
        return len(self.lambdas)

    @property
    def gamma(self):
        return self.p / self.n


@dataclass(frozen=True)
class EigenSpectrum:
    """Sample-covariance eigenvalues, descending, with sample count."""

    values: np.ndarray
    n: int
    beta: int = 1

    def __post_init__(self):
        arr = as_float_vector(self.values, "eigenvalues")
        check_descending(arr, "eigenvalues")
        if arr[-1] < 0:
            raise InvalidInputError(f"eigenvalues must be non-negative, got {arr[-1]!r}")
        if self.n < 1:
            raise InvalidInputError(f"n must be >= 1, got {self.n}")
        if self.beta not in (1, 2):
            raise InvalidInputError(f"beta must be 1 or 2, got {self.beta!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def p(self):
        return self.values.size


def population_eigenvalues(scenario):
    """Length-p vector (lambda_1 + sigma^2, ..., sigma^2, ..., sigma^2)."""
    out = np.full(scenario.p, scenario.sigma2, dtype=float)
    out[: scenario.q] += np.asarray(scenario.lambdas, dtype=float)
    return out


def draw_snapshots(scenario, seed, mix=False):
    """Draw n Gaussian snapshots, shape (n, p).

    Args:
        scenario: population model to sample from.
        seed: integer seed, or a numpy Generator to draw from directly.
        mix: rotate the population basis by a Haar-random orthogonal
            matrix; the spectrum is invariant, useful for integration
            tests of basis independence.
    """
    if scenario.beta != 1:
        raise UnsupportedFieldError("complex snapshots (beta=2) are not implemented")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.Generator(np.random.Philox(seed))
    scales = np.sqrt(population_eigenvalues(scenario))
    x = rng.standard_normal((scenario.n, scenario.p)) * scales
    if mix:
        basis, r = np.linalg.qr(rng.standard_normal((scenario.p, scenario.p)))
        basis *= np.sign(np.diag(r))
        x = x @ basis.T
    return x


def sample_covariance(snapshots):
    """S = (1/n) X^T X for an (n, p) snapshot matrix."""
    x = np.asarray(snapshots, dtype=float)
    if x.ndim != 2:
        raise InvalidInputError(f"snapshots must be a 2-d (n, p) array, got shape {x.shape}")
    if x.shape[0] < 1:
        raise InvalidInputError("need at least one snapshot")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("snapshots must be finite")
    return x.T @ x / x.shape[0]


def eigen_spectrum(cov, n, beta=1):
    """Descending eigenvalues of a symmetric covariance matrix.

    The matrix must be symmetric to 1e-10 relative; tiny negative
    eigenvalues from roundoff are clamped to zero.
    """
    s = np.asarray(cov, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidInputError(f"covariance must be square, got shape {s.shape}")
    scale = np.max(np.abs(s))
    if scale > 0 and np.max(np.abs(s - s.T)) > 1e-10 * scale:
        raise InvalidInputError("covariance must be symmetric to 1e-10 relative")
    vals = np.linalg.eigvalsh(s)[::-1].copy()
    np.clip(vals, 0.0, None, out=vals)
    return EigenSpectrum(values=vals, n=n, beta=beta)


def write_eigenvalue_csv(target, values):
    """Write `index,eigenvalue` rows (descending) to a path or text file."""
    values = check_descending(as_float_vector(values, "eigenvalues"), "eigenvalues")
    own = isinstance(target, (str, bytes))
    fh = open(target, "w") if own else target
    try:
        fh.write("index,eigenvalue\n")
        for i, v in enumerate(values, start=1):
            fh.write(f"{i},{v:.17g}\n")
    finally:
        if own:
            fh.close()


def read_eigenvalue_csv(source):
    """Parse an `index,eigenvalue` CSV, reporting the offending line on error."""
    own = isinstance(source, (str, bytes))
    fh = open(source, "r") if own else source
    try:
        header = fh.readline().strip()
        if header != "index,eigenvalue":
            raise InvalidInputError(f"line 1: expected header 'index,eigenvalue', got {header!r}")
        values = []
        prev = None
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise InvalidInputError(f"line {lineno}: expected two comma-separated fields, got {line!r}")
            try:
                idx = int(parts[0])
                val = float(parts[1])
            except ValueError:
                raise InvalidInputError(f"line {lineno}: could not parse {line!r}") from None
            if idx != len(values) + 1:
                raise InvalidInputError(f"line {lineno}: expected index {len(values) + 1}, got {idx}")
            if not np.isfinite(val) or val < 0:
                raise InvalidInputError(f"line {lineno}: eigenvalue must be finite and >= 0, got {parts[1]!r}")
            if prev is not None and val > prev:
                raise InvalidInputError(f"line {lineno}: eigenvalues must be non-increasing ({val!r} after {prev!r})")
            values.append(val)
            prev = val
        if not values:
            raise InvalidInputError("line 1: no eigenvalue rows found")
        return np.asarray(values, dtype=float)
    finally:
        if own:
            fh.close()
