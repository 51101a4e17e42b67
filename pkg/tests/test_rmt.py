import numpy as np
import pytest

from srcenum.exceptions import InvalidInputError
from srcenum.rmt import SOLVER_RTOL, rmt_estimate, solve_rho_sigma
from srcenum.spectrum import EigenSpectrum, SpikedScenario, draw_snapshots, eigen_spectrum, sample_covariance
from srcenum.tracy_widom import detection_threshold


def spectrum_of(values, n):
    return EigenSpectrum(values=np.asarray(values, dtype=float), n=n)


def fit_residuals(spectrum, fit):
    """Residuals of the two stationarity conditions the solver targets."""
    p, k = spectrum.p, fit.k
    values = spectrum.values
    sigma2 = fit.sigma2_hat
    noise_eq = sigma2 * (p - k) - (
        np.sum(values[k:]) + np.sum(values[:k] - fit.rho_hats)
    )
    coef = 1.0 - (p - k) / spectrum.n
    quad = fit.rho_hats**2 - fit.rho_hats * (values[:k] + coef * sigma2) + values[:k] * sigma2
    return abs(noise_eq), np.abs(quad)


def test_known_sigma2_single_pass_root():
    # l=4, sigma2=1, coef=1-3/8: larger root (4.625 + sqrt(5.390625))/2
    fit = solve_rho_sigma(spectrum_of([4.0, 1.0, 1.0, 1.0], 8), 1, known_sigma2=1.0)
    assert fit.iterations == 0
    assert fit.converged
    assert fit.sigma2_hat == 1.0
    np.testing.assert_allclose(fit.rho_hats[0], 3.4733859763129193, rtol=1e-14)


def test_negative_discriminant_falls_back_to_repeated_root():
    # second eigenvalue sits in the bulk: disc = 1.75^2 - 4 < 0, root = b/2
    fit = solve_rho_sigma(spectrum_of([4.0, 1.0, 1.0, 1.0], 8), 2, known_sigma2=1.0)
    np.testing.assert_allclose(fit.rho_hats[1], 0.875, rtol=1e-14)


def test_k_zero_is_the_grand_mean():
    fit = solve_rho_sigma(spectrum_of([4.0, 2.0, 1.0, 1.0], 8), 0)
    assert fit.sigma2_hat == pytest.approx(2.0, rel=1e-15)
    assert fit.rho_hats.size == 0
    assert fit.converged


def test_solver_satisfies_both_stationarity_conditions():
    rng = np.random.default_rng(31)
    converged = 0
    for _ in range(50):
        q = int(rng.integers(1, 4))
        p = int(rng.integers(q + 2, 40))
        n = 2 * p
        lams = tuple(np.sort(rng.uniform(3.0, 30.0, size=q))[::-1])
        scen = SpikedScenario(p=p, n=n, lambdas=lams)
        spec = eigen_spectrum(sample_covariance(draw_snapshots(scen, int(rng.integers(1 << 30)))), n)
        fit = solve_rho_sigma(spec, q)
        if not fit.converged:
            continue
        converged += 1
        noise_res, quad_res = fit_residuals(spec, fit)
        assert noise_res <= 1e-8 * fit.sigma2_hat * (p - q)
        assert np.all(quad_res <= 1e-8 * np.maximum(fit.rho_hats**2, 1.0))
    assert converged >= 49


def test_solver_iteration_metadata():
    scen = SpikedScenario(p=20, n=40, lambdas=(10.0, 6.0))
    spec = eigen_spectrum(sample_covariance(draw_snapshots(scen, 3)), 40)
    fit = solve_rho_sigma(spec, 2)
    assert fit.converged
    assert 1 <= fit.iterations <= 200
    assert fit.residual <= SOLVER_RTOL


def test_solve_rejects_out_of_range_k():
    spec = spectrum_of([4.0, 1.0, 1.0, 1.0], 8)
    with pytest.raises(InvalidInputError):
        solve_rho_sigma(spec, 4)
    with pytest.raises(InvalidInputError):
        solve_rho_sigma(spec, -1)


def test_estimate_flat_spectrum_reports_no_signals():
    spec = spectrum_of([1.05, 1.0, 0.95, 0.9, 0.85], 50)
    assert rmt_estimate(spec, 0.005, known_sigma2=1.0).q_hat == 0


def test_estimate_recovers_one_strong_signal():
    scen = SpikedScenario(p=20, n=200, lambdas=(15.0,))
    spec = eigen_spectrum(sample_covariance(draw_snapshots(scen, 6)), 200)
    trace = rmt_estimate(spec, 0.005)
    assert trace.q_hat == 1
    assert len(trace.per_k) == 2
    assert trace.per_k[0].accepted
    assert not trace.per_k[1].accepted


def test_estimate_trace_thresholds_are_reproducible():
    scen = SpikedScenario(p=16, n=64, lambdas=(12.0,))
    spec = eigen_spectrum(sample_covariance(draw_snapshots(scen, 9)), 64)
    trace = rmt_estimate(spec, 0.005)
    for rec in trace.per_k:
        sigma2 = rec.fit.sigma2_hat
        expected = detection_threshold(sigma2, 64, 16 - rec.k, 0.005)
        assert rec.threshold == pytest.approx(expected, rel=1e-14)
        assert rec.accepted == (rec.l_k > rec.threshold)


def test_estimate_known_sigma2_skips_the_solver():
    spec = spectrum_of([30.0, 1.2, 1.0, 0.9, 0.8, 0.7], 60)
    trace = rmt_estimate(spec, 0.005, known_sigma2=1.0)
    assert all(rec.fit is None for rec in trace.per_k)
    assert trace.q_hat == 1


def test_first_step_acceptance_is_monotone_in_l1():
    rest = [1.2, 1.0, 0.9, 0.8]
    accepted = []
    for l1 in np.linspace(1.5, 30.0, 30):
        spec = spectrum_of([l1] + rest, 60)
        trace = rmt_estimate(spec, 0.005, known_sigma2=1.0)
        accepted.append(trace.per_k[0].accepted)
    assert np.all(np.diff(np.asarray(accepted, dtype=int)) >= 0)


def test_q_hat_nests_in_alpha_with_known_sigma2():
    rng = np.random.default_rng(32)
    for _ in range(20):
        scen = SpikedScenario(p=12, n=60, lambdas=(8.0, 4.0))
        spec = eigen_spectrum(
            sample_covariance(draw_snapshots(scen, int(rng.integers(1 << 30)))), 60
        )
        q_strict = rmt_estimate(spec, 0.001, known_sigma2=1.0).q_hat
        q_loose = rmt_estimate(spec, 0.05, known_sigma2=1.0).q_hat
        assert q_strict <= q_loose


def test_small_p_cap_returns_last_accepted_k():
    # p=3: only k=1 is testable; a huge leading pair accepts it
    spec = spectrum_of([100.0, 50.0, 1.0], 100)
    trace = rmt_estimate(spec, 0.005, known_sigma2=1.0)
    assert trace.q_hat == 1
    assert len(trace.per_k) == 1


def test_estimate_validates_alpha():
    spec = spectrum_of([2.0, 1.0, 0.5, 0.2], 10)
    with pytest.raises(InvalidInputError):
        rmt_estimate(spec, 0.0)
    with pytest.raises(InvalidInputError):
        rmt_estimate(spec, 1.0)
