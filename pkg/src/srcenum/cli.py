"""Command-line interface.

    srcenum estimate --input eigs.csv --n 200
    srcenum simulate --p 64 --n 128 --lambdas 150,120,100 --out eigs.csv
    srcenum sweep --preset fig1a --trials 2000 --out results.csv
    srcenum tw --alpha 0.005 --n 200 --p 100
    srcenum analyze --p 100 --n 200 --lambdas 4 --alpha 0.005

Exit codes: 0 success, 1 usage error, 2 runtime error.  Floats are
printed with repr so output round-trips bit-exactly.
"""

import argparse
import csv
import sys

from .error_analysis import aic_mdl_baseline, theoretical_error_probabilities
from .exceptions import InvalidInputError, SrcenumError
from .harness import DEFAULT_SEED, figure_preset, run_sweep, write_results
from .ls_rmt import ls_rmt_estimate
from .rmt import rmt_estimate
from .spectrum import (
    EigenSpectrum,
    SpikedScenario,
    draw_snapshots,
    eigen_spectrum,
    read_eigenvalue_csv,
    sample_covariance,
    write_eigenvalue_csv,
)
from .tracy_widom import threshold_params, tw_quantile

__all__ = ["main", "build_parser"]

_SWEEP_CONFIG_KEYS = ("preset", "trials", "seed", "alpha", "out", "estimators", "workers")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _lambda_list(text):
    if not text:
        return ()
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise InvalidInputError(f"expected comma-separated numbers, got {text!r}") from None


def _estimator_list(text):
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser():
    parser = _Parser(prog="srcenum", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    est = commands.add_parser(
        "estimate", help="estimate the signal count from an eigenvalue CSV"
    )
    est.add_argument("--input", required=True, help="CSV with header 'index,eigenvalue'")
    est.add_argument("--n", required=True, type=int, help="number of snapshots behind the spectrum")
    est.add_argument(
        "--estimator",
        default="ls-rmt",
        choices=("ls-rmt", "rmt", "aic", "mdl"),
    )
    est.add_argument("--alpha", type=float, default=0.005)
    est.add_argument("--sigma2", type=float, default=None, help="treat the noise variance as known")
    est.add_argument("--trace", default=None, help="write per-k test records to this CSV")
    est.set_defaults(func=cmd_estimate)

    sim = commands.add_parser("simulate", help="draw one scenario and write its eigenvalue CSV")
    sim.add_argument("--p", required=True, type=int)
    sim.add_argument("--n", required=True, type=int)
    sim.add_argument("--lambdas", type=_lambda_list, default=(), help="comma-separated signal strengths")
    sim.add_argument("--sigma2", type=float, default=1.0)
    sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sim.add_argument("--mix", action="store_true", help="rotate by a random orthogonal basis")
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    swp = commands.add_parser("sweep", help="run a preset Monte-Carlo sweep and write results CSV")
    swp.add_argument("--preset", default=None)
    swp.add_argument("--trials", type=int, default=None)
    swp.add_argument("--seed", type=int, default=None)
    swp.add_argument("--alpha", type=float, default=None)
    swp.add_argument("--estimators", type=_estimator_list, default=None, help="comma-separated subset")
    swp.add_argument("--workers", type=int, default=None)
    swp.add_argument("--out", default=None)
    swp.add_argument("--config", default=None, help="key=value file supplying defaults for the flags above")
    swp.set_defaults(func=cmd_sweep)

    tw = commands.add_parser("tw", help="Tracy-Widom threshold lookup")
    tw.add_argument("--alpha", required=True, type=float)
    tw.add_argument("--n", type=int, default=None)
    tw.add_argument("--p", type=int, default=None, help="effective dimension for mu/sigma/phi")
    tw.add_argument("--sigma2", type=float, default=1.0)
    tw.set_defaults(func=cmd_tw)

    ana = commands.add_parser("analyze", help="closed-form error probabilities for a scenario")
    ana.add_argument("--p", required=True, type=int)
    ana.add_argument("--n", required=True, type=int)
    ana.add_argument("--lambdas", type=_lambda_list, default=(), help="comma-separated signal strengths")
    ana.add_argument("--sigma2", type=float, default=1.0)
    ana.add_argument("--alpha", type=float, default=0.005)
    ana.add_argument("--indicator", type=int, choices=(0, 1), default=1)
    ana.set_defaults(func=cmd_analyze)

    return parser


def _write_trace(path, records):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["k", "l_k", "statistic", "threshold", "accepted"])
        for rec in records:
            if hasattr(rec, "nu_ls_hat"):
                statistic = rec.l_k - rec.nu_ls_hat
            else:
                statistic = rec.statistic
            writer.writerow(
                [rec.k, repr(rec.l_k), repr(statistic), repr(rec.threshold), int(rec.accepted)]
            )


def cmd_estimate(args):
    if args.n < 1:
        raise InvalidInputError(f"--n must be >= 1, got {args.n}")
    values = read_eigenvalue_csv(args.input)
    spectrum = EigenSpectrum(values=values, n=args.n)
    if args.estimator in ("ls-rmt", "rmt"):
        runner = ls_rmt_estimate if args.estimator == "ls-rmt" else rmt_estimate
        trace = runner(spectrum, args.alpha, known_sigma2=args.sigma2)
        q_hat = trace.q_hat
        if args.trace:
            _write_trace(args.trace, trace.per_k)
    else:
        if args.sigma2 is not None:
            raise InvalidInputError(f"--sigma2 does not apply to {args.estimator}")
        if args.trace:
            raise InvalidInputError(f"--trace does not apply to {args.estimator}")
        q_hat = aic_mdl_baseline(spectrum, args.estimator)
    print(f"q_hat={q_hat}")
    return 0


def cmd_simulate(args):
    scenario = SpikedScenario(p=args.p, n=args.n, lambdas=args.lambdas, sigma2=args.sigma2)
    snapshots = draw_snapshots(scenario, args.seed, mix=args.mix)
    spectrum = eigen_spectrum(sample_covariance(snapshots), scenario.n)
    write_eigenvalue_csv(args.out, spectrum.values)
    print(f"wrote {args.out} (p={scenario.p}, n={scenario.n}, q={scenario.q}, seed={args.seed})")
    return 0


def _read_config_file(path):
    settings = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or not key:
                raise InvalidInputError(f"{path}: line {lineno}: expected key=value, got {line!r}")
            if key not in _SWEEP_CONFIG_KEYS:
                raise InvalidInputError(
                    f"{path}: line {lineno}: unknown key {key!r}; allowed: {', '.join(_SWEEP_CONFIG_KEYS)}"
                )
            settings[key] = value.strip()
    return settings


def cmd_sweep(args):
    settings = _read_config_file(args.config) if args.config else {}

    def pick(flag_value, key, fallback, convert):
        if flag_value is not None:
            return flag_value
        if key in settings:
            return convert(settings[key])
        return fallback

    preset = pick(args.preset, "preset", None, str)
    if preset is None:
        raise InvalidInputError("--preset is required (flag or config file)")
    out = pick(args.out, "out", None, str)
    if out is None:
        raise InvalidInputError("--out is required (flag or config file)")
    config = figure_preset(
        preset,
        trials=pick(args.trials, "trials", 2000, int),
        seed=pick(args.seed, "seed", DEFAULT_SEED, int),
        alpha=pick(args.alpha, "alpha", 0.005, float),
        estimators=pick(args.estimators, "estimators", None, _estimator_list),
        workers=pick(args.workers, "workers", 1, int),
    )
    result = run_sweep(config)
    write_results(result, out)
    per_point = {}
    for row in result.rows:
        per_point.setdefault((row.label, row.p, row.n), []).append(row)
    for (label, p, n), rows in per_point.items():
        parts = " ".join(f"{r.estimator}:p_mis={r.p_mis!r},p_over={r.p_over!r}" for r in rows)
        print(f"{label} p={p} n={n} trials={rows[0].trials} {parts}")
    return 0


def cmd_tw(args):
    s_alpha = tw_quantile(args.alpha)
    print(f"s_alpha={s_alpha!r}")
    if (args.n is None) != (args.p is None):
        raise InvalidInputError("--n and --p must be given together")
    if args.n is not None:
        params = threshold_params(args.n, args.p, args.alpha)
        phi = args.sigma2 * (params.mu + params.s_alpha * params.sigma)
        print(f"mu={params.mu!r}")
        print(f"sigma={params.sigma!r}")
        print(f"phi={phi!r}")
    return 0


def cmd_analyze(args):
    scenario = SpikedScenario(p=args.p, n=args.n, lambdas=args.lambdas, sigma2=args.sigma2)
    probs = theoretical_error_probabilities(scenario, args.alpha, indicator=args.indicator)
    writer = csv.writer(sys.stdout)
    writer.writerow(["estimator", "p_ue", "p_oe", "p_e", "delta_inc_ue"])
    for name in ("ls-rmt", "rmt"):
        row = probs[name]
        writer.writerow([name, repr(row.p_ue), repr(row.p_oe), repr(row.p_e), repr(row.delta_inc_ue)])
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SrcenumError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
