import numpy as np
import pytest

import srcenum.harness as harness
from srcenum.exceptions import InvalidInputError
from srcenum.harness import (
    DEFAULT_SEED,
    ESTIMATOR_NAMES,
    GridPoint,
    PointResult,
    SweepConfig,
    fig7_lambda_grid,
    figure_preset,
    read_results,
    run_sweep,
    write_results,
)
from srcenum.spectrum import SpikedScenario


def tiny_config(trials=4, estimators=("ls-rmt", "rmt"), workers=1, seed=DEFAULT_SEED, points=None):
    if points is None:
        points = (
            GridPoint(label="a", scenario=SpikedScenario(p=8, n=32, lambdas=(20.0,))),
            GridPoint(label="b", scenario=SpikedScenario(p=8, n=32)),
        )
    return SweepConfig(
        name="tiny",
        points=points,
        estimators=estimators,
        alpha=0.005,
        trials=trials,
        seed=seed,
        workers=workers,
    )


def count_fields(row):
    return (
        row.label,
        row.p,
        row.n,
        row.q_true,
        row.estimator,
        row.alpha,
        row.trials,
        row.seed,
        row.n_under,
        row.n_correct,
        row.n_over,
        row.n_errors,
    )


def test_sweep_counts_are_exhaustive_and_deterministic():
    r1 = run_sweep(tiny_config())
    r2 = run_sweep(tiny_config())
    assert len(r1.rows) == 4  # 2 points x 2 estimators
    for row in r1.rows:
        assert row.n_under + row.n_correct + row.n_over + row.n_errors == row.trials
        assert row.p_mis == pytest.approx(row.p_under + row.p_over, abs=0)
    assert [count_fields(r) for r in r1.rows] == [count_fields(r) for r in r2.rows]


def test_sweep_probabilities_are_exact_count_ratios():
    result = run_sweep(tiny_config(trials=7))
    for row in result.rows:
        assert row.p_under == row.n_under / 7
        assert row.p_correct == row.n_correct / 7
        assert row.p_over == row.n_over / 7


def test_worker_pool_matches_sequential_execution():
    sequential = run_sweep(tiny_config(trials=5, workers=1))
    pooled = run_sweep(tiny_config(trials=5, workers=2))
    assert [count_fields(r) for r in sequential.rows] == [count_fields(r) for r in pooled.rows]


def test_every_estimator_sees_the_same_spectrum_per_trial(monkeypatch):
    seen = []
    original = harness.run_estimator

    def probe(name, spectrum, alpha, known_sigma2=None):
        seen.append((name, spectrum.values.tobytes()))
        return original(name, spectrum, alpha, known_sigma2=known_sigma2)

    monkeypatch.setattr(harness, "run_estimator", probe)
    run_sweep(tiny_config(trials=3, estimators=ESTIMATOR_NAMES))
    group = len(ESTIMATOR_NAMES)
    assert len(seen) == 2 * 3 * group
    for i in range(0, len(seen), group):
        names = [name for name, _ in seen[i : i + group]]
        hashes = {digest for _, digest in seen[i : i + group]}
        assert names == list(ESTIMATOR_NAMES)
        assert len(hashes) == 1


def test_environment_variable_overrides_the_seed(monkeypatch):
    monkeypatch.setenv(harness.SEED_ENV_VAR, "777")
    result = run_sweep(tiny_config(seed=1))
    assert result.config.seed == 777
    assert all(row.seed == 777 for row in result.rows)
    monkeypatch.setenv(harness.SEED_ENV_VAR, "not-a-seed")
    with pytest.raises(InvalidInputError):
        run_sweep(tiny_config(seed=1))


def test_seed_changes_the_draws(monkeypatch):
    spectra = {}
    original = harness.run_estimator

    def probe(name, spectrum, alpha, known_sigma2=None):
        spectra.setdefault(current_seed, spectrum.values.tobytes())
        return original(name, spectrum, alpha, known_sigma2=known_sigma2)

    monkeypatch.setattr(harness, "run_estimator", probe)
    for current_seed in (1, 2):
        run_sweep(tiny_config(trials=1, estimators=("rmt",), seed=current_seed))
    assert spectra[1] != spectra[2]


def test_wall_time_scales_roughly_linearly_in_trials():
    small = run_sweep(tiny_config(trials=100, estimators=("ls-rmt",)))
    large = run_sweep(tiny_config(trials=200, estimators=("ls-rmt",)))
    t_small = sum(row.wall_time for row in small.rows)
    t_large = sum(row.wall_time for row in large.rows)
    assert t_large < 4.0 * t_small
    assert t_large > t_small


def test_sweep_config_validation():
    with pytest.raises(InvalidInputError):
        tiny_config(estimators=("music",))
    with pytest.raises(InvalidInputError):
        tiny_config(trials=0)
    with pytest.raises(InvalidInputError):
        tiny_config(workers=0)
    with pytest.raises(InvalidInputError):
        tiny_config(points=())
    with pytest.raises(InvalidInputError):
        SweepConfig(
            name="bad",
            points=(GridPoint(label="a", scenario=SpikedScenario(p=4, n=8)),),
            estimators=("rmt",),
            alpha=1.5,
            trials=1,
            seed=0,
        )


def test_point_result_rejects_inconsistent_counts():
    with pytest.raises(InvalidInputError):
        PointResult(
            label="x", p=4, n=8, q_true=0, estimator="rmt", alpha=0.005,
            trials=10, seed=0, n_under=1, n_correct=2, n_over=3, n_errors=0,
        )


def test_results_csv_round_trip(tmp_path):
    result = run_sweep(tiny_config(trials=6))
    path = tmp_path / "rows.csv"
    write_results(result, str(path))
    rows = read_results(str(path))
    assert [count_fields(r) for r in rows] == [count_fields(r) for r in result.rows]
    header = path.read_text().splitlines()[0]
    assert header == "preset,p,n,q_true,estimator,alpha,trials,seed,p_under,p_correct,p_over,p_mis,errors"


def test_results_csv_rejects_corruption(tmp_path):
    result = run_sweep(tiny_config(trials=6))
    path = tmp_path / "rows.csv"
    write_results(result, str(path))
    lines = path.read_text().splitlines()

    bad_header = tmp_path / "h.csv"
    bad_header.write_text("\n".join(["preset,p,n"] + lines[1:]) + "\n")
    with pytest.raises(InvalidInputError):
        read_results(str(bad_header))

    fields = lines[1].split(",")
    fields[11] = "0.9999"  # p_mis no longer matches the counts
    bad_row = tmp_path / "r.csv"
    bad_row.write_text("\n".join([lines[0], ",".join(fields)]) + "\n")
    with pytest.raises(InvalidInputError, match="line 2"):
        read_results(str(bad_row))

    with pytest.raises(InvalidInputError, match="empty"):
        empty = tmp_path / "e.csv"
        empty.write_text("")
        read_results(str(empty))


def test_figure_presets_grids():
    fig1a = figure_preset("fig1a", trials=10)
    assert fig1a.known_sigma2
    assert fig1a.estimators == ("ls-rmt", "rmt")
    assert [pt.scenario.p for pt in fig1a.points] == [16, 24, 32, 48, 64, 96, 128]
    assert all(pt.scenario.n == 2 * pt.scenario.p for pt in fig1a.points)
    assert all(pt.scenario.q == 0 for pt in fig1a.points)

    fig4 = figure_preset("fig4", trials=10)
    assert not fig4.known_sigma2
    assert fig4.estimators == ESTIMATOR_NAMES
    assert all(pt.scenario.q == 9 for pt in fig4.points)

    fig5 = figure_preset("fig5", trials=10)
    assert all(pt.scenario.n == pt.scenario.p // 2 for pt in fig5.points)

    fig6 = figure_preset("fig6", trials=10)
    assert all(pt.scenario.p == 50 for pt in fig6.points)
    assert [pt.scenario.n for pt in fig6.points] == [24, 32, 48, 64, 96, 128, 192, 256]

    with pytest.raises(InvalidInputError):
        figure_preset("fig9")


def test_fig7_grid_brackets_the_detectability_limit():
    lam_det = np.sqrt(0.5)
    grid = fig7_lambda_grid()
    assert grid.size == 24
    np.testing.assert_allclose(grid[0], 0.1 * lam_det, rtol=1e-12)
    np.testing.assert_allclose(grid[-1], 8.0 * lam_det, rtol=1e-12)
    config = figure_preset("fig7", trials=10)
    assert len(config.points) == 24
    assert config.points[0].label.startswith("fig7@lambda1=")
    assert all(pt.scenario.p == 160 and pt.scenario.n == 320 for pt in config.points)


def test_run_estimator_rejects_unknown_name():
    from srcenum.harness import run_estimator
    from srcenum.spectrum import EigenSpectrum

    spec = EigenSpectrum(values=np.array([2.0, 1.0]), n=8)
    with pytest.raises(InvalidInputError):
        run_estimator("music", spec, 0.005)
