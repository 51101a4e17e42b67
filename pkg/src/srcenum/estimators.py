"""Scikit-learn style wrappers.

fit(X) takes an (n_samples, n_features) snapshot matrix assumed to be
zero-mean, forms the sample-covariance spectrum once, and stores the
estimated signal count as n_signals_.  Parameters follow the sklearn
get_params/set_params convention so the wrappers compose with model
selection utilities.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array

from .error_analysis import aic_mdl_baseline
from .ls_rmt import ls_rmt_estimate
from .rmt import rmt_estimate
from .spectrum import eigen_spectrum, sample_covariance

__all__ = ["LsRmtEstimator", "RmtEstimator", "AicEstimator", "MdlEstimator"]


class _SpectrumEstimator(BaseEstimator):
    """Shared fit plumbing; subclasses implement _estimate(spectrum)."""

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_min_samples=1, ensure_min_features=2)
        spectrum = eigen_spectrum(sample_covariance(X), X.shape[0])
        self.spectrum_ = spectrum
        self.n_signals_ = self._estimate(spectrum)
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).n_signals_


class LsRmtEstimator(_SpectrumEstimator):
    """Sequential edge test with shrinkage-corrected bias removal."""

    def __init__(self, alpha=0.005, known_sigma2=None):
        self.alpha = alpha
        self.known_sigma2 = known_sigma2

    def _estimate(self, spectrum):
        trace = ls_rmt_estimate(spectrum, self.alpha, known_sigma2=self.known_sigma2)
        self.trace_ = trace
        return trace.q_hat


class RmtEstimator(_SpectrumEstimator):
    """Sequential edge test on the raw eigenvalues."""

    def __init__(self, alpha=0.005, known_sigma2=None):
        self.alpha = alpha
        self.known_sigma2 = known_sigma2

    def _estimate(self, spectrum):
        trace = rmt_estimate(spectrum, self.alpha, known_sigma2=self.known_sigma2)
        self.trace_ = trace
        return trace.q_hat


class AicEstimator(_SpectrumEstimator):
    """Classic penalized log-likelihood baseline."""

    def _estimate(self, spectrum):
        return aic_mdl_baseline(spectrum, "aic")


class MdlEstimator(_SpectrumEstimator):
    """Classic penalized log-likelihood baseline with the BIC-style penalty."""

    def _estimate(self, spectrum):
        return aic_mdl_baseline(spectrum, "mdl")
