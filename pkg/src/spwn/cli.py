"""Command-line interface: ``spwn {transform,acf,portmanteau,simulate,experiment}``.

Exit codes: 0 success, 2 usage or data error, 130 interrupted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .acf_stats import CORRECTIONS, acf_diagnose, default_max_lag
from .distributions import RngStream
from .errors import DegenerateSeriesError, DomainError
from .experiment import DEFAULT_SEED, run_experiment, stderr_progress, table1_config, table2_config
from .io import (
    SeriesFileError,
    atomic_write,
    diagnostics_to_json,
    diagnostics_to_text,
    format_series,
    plot_data_csv,
    read_series,
    write_series,
)
from .simulate import DEFAULT_BURN_IN, ArchSpec, MarSpec, SimConfig, simulate
from .transform import PowerParams, transform_series

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERRUPT = 130


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("SPWN_SEED")
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        seed = int(raw, 10)
    except ValueError:
        raise UsageError(f"SPWN_SEED must be an unsigned integer, got {raw!r}") from None
    if not 0 <= seed < 2**64:
        raise UsageError(f"SPWN_SEED out of 64-bit range: {raw}")
    return seed


def _lambda_list(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid lambda list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("lambda list is empty")
    return vals


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with atomic_write(path) as fh:
            fh.write(text)


def cmd_transform(args) -> int:
    xs, header = read_series(args.input)
    ys = transform_series(xs, PowerParams(args.lam, args.c))
    if args.output in (None, "-"):
        sys.stdout.write(format_series(ys.values, header))
    else:
        write_series(args.output, ys.values, header)
    return EXIT_OK


def _diagnostics(args):
    xs, _ = read_series(args.input)
    m = default_max_lag(xs.n) if args.max_lag is None else args.max_lag
    if not 1 <= m < xs.n:
        raise UsageError(f"max lag must satisfy 1 <= m < n = {xs.n}, got {m}")
    return acf_diagnose(xs, m, args.lambdas, args.level, args.correction)


def cmd_acf(args) -> int:
    blocks = _diagnostics(args)
    _emit(diagnostics_to_json(blocks) if args.json else diagnostics_to_text(blocks), None)
    if args.plot_data:
        _emit(plot_data_csv(blocks), args.plot_data)
    return EXIT_OK


def cmd_portmanteau(args) -> int:
    blocks = _diagnostics(args)
    if args.json:
        rows = [{"lambda": lam, "stat": d.portmanteau_stat, "df": d.max_lag,
                 "pvalue": d.portmanteau_pvalue} for lam, d in blocks]
        _emit(json.dumps({"portmanteau": rows}, indent=2) + "\n", None)
    else:
        lines = [f"{'lambda':>8} {'Q':>14} {'df':>4} {'p-value':>10}"]
        for lam, d in blocks:
            lines.append(f"{lam:>8g} {d.portmanteau_stat:>14.6f} {d.max_lag:>4d} {d.portmanteau_pvalue:>10.6f}")
        _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_simulate(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.model == "arch1":
        spec = ArchSpec(args.alpha1, args.omega)
    else:
        spec = MarSpec(args.sigma2, args.weight1, args.phi1, args.phi2)
    cfg = SimConfig(args.n, RngStream(seed, args.stream_id), args.burn_in)
    xs = simulate(spec, cfg)
    if args.output in (None, "-"):
        sys.stdout.write(format_series(xs.values))
    else:
        write_series(args.output, xs.values)
    return EXIT_OK


def cmd_experiment(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    overrides = {"seed": seed, "correction": args.correction, "level": args.level,
                 "burn_in": args.burn_in, "statistic": args.statistic, "max_lag": args.max_lag}
    if args.reps is not None:
        overrides["reps"] = args.reps
    if args.n is not None:
        overrides["n"] = args.n
    build = table1_config if args.preset == "table1" else table2_config
    cfg = build(**overrides)
    progress = None if args.quiet else stderr_progress
    # The output file only appears once the full report has been written.
    with atomic_write(args.out) if args.out not in (None, "-") else _stdout() as fh:
        report = run_experiment(cfg, workers=args.workers, progress=progress)
        fh.write(report.to_json() if args.format == "json" else report.to_csv())
    if not args.quiet:
        stderr_progress(f"elapsed {report.elapsed:.1f}s")
    return EXIT_OK


class _stdout:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        return False


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spwn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply the (asymmetric) signed power to a series file")
    t.add_argument("input")
    t.add_argument("--lambda", dest="lam", type=float, required=True)
    t.add_argument("-c", type=float, default=-1.0, help="negative-branch coefficient (default -1)")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_transform)

    for name, func, help_ in (("acf", cmd_acf, "robust autocorrelation diagnostics"),
                              ("portmanteau", cmd_portmanteau, "robust portmanteau test")):
        a = sub.add_parser(name, help=help_)
        a.add_argument("input")
        a.add_argument("-m", "--max-lag", type=_pos_int)
        a.add_argument("--lambdas", type=_lambda_list, default=[1.0],
                       help="comma separated exponents (default 1)")
        a.add_argument("--level", type=float, default=0.95)
        a.add_argument("--correction", choices=CORRECTIONS, default="n_over_n_minus_i")
        a.add_argument("--json", action="store_true")
        if name == "acf":
            a.add_argument("--plot-data", metavar="PATH",
                           help="also write (lambda, lag, rho, band) rows as CSV")
        a.set_defaults(func=func)

    s = sub.add_parser("simulate", help="simulate ARCH(1) or MAR(2;1,1) white noise")
    s.add_argument("model", choices=("arch1", "mar"))
    s.add_argument("--alpha1", type=float, default=0.25)
    s.add_argument("--omega", type=float, default=0.01)
    s.add_argument("--sigma2", type=float, default=1.0)
    s.add_argument("--weight1", type=float, default=0.25)
    s.add_argument("--phi1", type=float, default=0.3)
    s.add_argument("--phi2", type=float, default=-0.1)
    s.add_argument("--n", type=_pos_int, default=2000)
    s.add_argument("--seed", type=int)
    s.add_argument("--stream-id", type=_nonneg_int, default=0)
    s.add_argument("--burn-in", type=_nonneg_int, default=DEFAULT_BURN_IN)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    e = sub.add_parser("experiment", help="reproduce a Monte Carlo rejection-rate table")
    e.add_argument("preset", choices=("table1", "table2"))
    e.add_argument("--reps", type=_pos_int)
    e.add_argument("--n", type=_pos_int)
    e.add_argument("--seed", type=int)
    e.add_argument("--workers", type=_pos_int, default=1)
    e.add_argument("--out")
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.add_argument("--level", type=float, default=0.95)
    e.add_argument("--correction", choices=CORRECTIONS, default="n_over_n_minus_i")
    e.add_argument("--burn-in", type=_nonneg_int, default=DEFAULT_BURN_IN)
    e.add_argument("--statistic", choices=("lag1", "portmanteau"), default="lag1")
    e.add_argument("--max-lag", type=_pos_int, default=1)
    e.add_argument("-q", "--quiet", action="store_true")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return EXIT_INTERRUPT
    except (UsageError, SeriesFileError, DomainError, DegenerateSeriesError) as exc:
        print(f"spwn {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
