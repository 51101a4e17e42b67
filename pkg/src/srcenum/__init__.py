"""Source enumeration from sample-covariance eigenvalues.

Estimates how many signals are present in multivariate noisy snapshots
by sequential edge tests on the eigenvalue spectrum, with a
shrinkage-corrected variant that removes the finite-sample interaction
bias, plus the classic penalized-likelihood baselines, closed-form
error probabilities, and a reproducible Monte-Carlo harness.
"""

from .error_analysis import (
    ErrorProbabilities,
    StatisticLaw,
    aic_mdl_baseline,
    delta_increased_ue,
    p_e_ls_rmt,
    p_oe_rmt,
    p_ue_ls_rmt,
    p_ue_rmt,
    standard_normal_cdf,
    statistic_law,
    theoretical_error_probabilities,
)
from .estimators import AicEstimator, LsRmtEstimator, MdlEstimator, RmtEstimator
from .exceptions import (
    DegenerateSpectrumError,
    InvalidInputError,
    OutOfRangeError,
    PhaseTransitionError,
    SrcenumError,
    UnsupportedFieldError,
)
from .harness import (
    ESTIMATOR_NAMES,
    GridPoint,
    PointResult,
    SweepConfig,
    SweepResult,
    figure_preset,
    read_results,
    run_sweep,
    write_results,
)
from .lawley import expected_eigenvalue, interaction_bias, kappa_factor, signal_asymptotics
from .ls_rmt import LsRmtStepRecord, ls_rmt_estimate, ls_rmt_step
from .rmt import EstimateTrace, RmtFit, rmt_estimate, solve_rho_sigma
from .shrinkage import (
    ShrinkageStats,
    compute_correction_factors,
    corrected_mean_params,
    corrected_variance,
    shrinkage_coefficient,
    shrinkage_stats,
)
from .spectrum import (
    EigenSpectrum,
    SpikedScenario,
    draw_snapshots,
    eigen_spectrum,
    population_eigenvalues,
    read_eigenvalue_csv,
    sample_covariance,
    write_eigenvalue_csv,
)
from .tracy_widom import (
    TwThresholdParams,
    centering_mu,
    detection_threshold,
    scaling_sigma,
    threshold_params,
    tw_cdf,
    tw_quantile,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # spectrum model
    "SpikedScenario",
    "EigenSpectrum",
    "population_eigenvalues",
    "draw_snapshots",
    "sample_covariance",
    "eigen_spectrum",
    "write_eigenvalue_csv",
    "read_eigenvalue_csv",
    # thresholds
    "TwThresholdParams",
    "tw_cdf",
    "tw_quantile",
    "centering_mu",
    "scaling_sigma",
    "threshold_params",
    "detection_threshold",
    # finite-sample bias
    "interaction_bias",
    "kappa_factor",
    "signal_asymptotics",
    "expected_eigenvalue",
    # shrinkage
    "ShrinkageStats",
    "shrinkage_coefficient",
    "compute_correction_factors",
    "corrected_mean_params",
    "corrected_variance",
    "shrinkage_stats",
    # estimators
    "RmtFit",
    "EstimateTrace",
    "solve_rho_sigma",
    "rmt_estimate",
    "LsRmtStepRecord",
    "ls_rmt_step",
    "ls_rmt_estimate",
    "aic_mdl_baseline",
    "LsRmtEstimator",
    "RmtEstimator",
    "AicEstimator",
    "MdlEstimator",
    # error analysis
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
    # Monte-Carlo harness
    "ESTIMATOR_NAMES",
    "GridPoint",
    "SweepConfig",
    "PointResult",
    "SweepResult",
    "run_sweep",
    "figure_preset",
    "write_results",
    "read_results",
    # exceptions
    "SrcenumError",
    "InvalidInputError",
    "DegenerateSpectrumError",
    "PhaseTransitionError",
    "OutOfRangeError",
    "UnsupportedFieldError",
]
