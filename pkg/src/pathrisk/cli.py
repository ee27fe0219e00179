"""Command-line interface: ``pathrisk <command> [options]``.

Input is a ``date,return`` CSV (``-`` or no ``--input`` reads standard input).
Tables are written as CSV with a header row, or with ``--format json`` as one
object mapping each field name to its value (or column of values). Floats are
printed with 10 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import montecarlo as mc
from . import pathmetrics as pm
from . import temporal as tp
from .errors import ConfigError, DomainError, PathRiskError
from .series import (FULL, WindowSpec, format_returns_csv, parse_returns_csv,
                     path_from_returns)

DEFAULT_KAPPAS = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"


class UsageError(ConfigError):
    pass


# -- formatting ---------------------------------------------------------------

def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = format(float(value), ".10g")
        return "0" if text == "-0" else text
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(format(float(value), ".10g"))
        return 0.0 if value == 0 else value
    return value


def render(columns: Sequence[str], rows: Sequence[Sequence], fmt_name: str) -> str:
    if fmt_name == "json":
        if len(rows) == 1:
            obj = {c: _json_value(v) for c, v in zip(columns, rows[0])}
        else:
            obj = {c: [_json_value(r[i]) for r in rows] for i, c in enumerate(columns)}
        return json.dumps(obj, indent=2) + "\n"
    lines = [",".join(columns)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


# -- argument helpers ---------------------------------------------------------

def _alpha(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid confidence level {text!r}")
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1), got {text}")
    return value


def _window(text):
    if text.strip().lower() == FULL:
        return FULL
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be an integer >= 2 or 'full', got {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError(f"window must be >= 2, got {value}")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a nonnegative integer, got {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2**64), got {value}")
    return value


def _kappas(text):
    try:
        values = [float(k) for k in text.split(",") if k.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid kappa list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("kappa list is empty")
    bad = [k for k in values if not abs(k) < 1]
    if bad:
        raise argparse.ArgumentTypeError(f"|kappa| must be < 1, got {bad[0]}")
    return values


def _spec(args):
    if args.window == FULL:
        return FULL
    return WindowSpec(args.window, args.stride)


def _read_returns(args):
    source = args.input
    ppy = getattr(args, "periods_per_year", 252)
    if source in (None, "-"):
        return parse_returns_csv(sys.stdin, source="<stdin>", periods_per_year=ppy)
    with open(source, newline="", encoding="utf-8") as fh:
        return parse_returns_csv(fh, source=source, periods_per_year=ppy)


# -- commands -----------------------------------------------------------------

def cmd_paths(args):
    returns = _read_returns(args)
    path = path_from_returns(returns)
    run_max = pm.running_max(path)
    dd = run_max - path.values
    if args.percent:
        dd = -np.expm1(-dd)
    g = pm.peak_time(path)
    dur = np.arange(len(g)) - g
    dates = ("",) + (returns.labels or ())
    rows = list(zip(dates, path.values.tolist(), run_max.tolist(), dd.tolist(),
                    g.tolist(), dur.tolist()))
    columns = ["date", "path", "running_max", "drawdown", "peak_time", "duration"]
    return render(columns, rows, args.format)


def cmd_risk(args):
    returns = _read_returns(args)
    report = tp.risk_report(returns, _spec(args), args.alpha, percent=args.percent)
    d = report.as_dict()
    return render(list(d), [list(d.values())], args.format)


def cmd_episode(args):
    returns = _read_returns(args)
    path = path_from_returns(returns)
    try:
        ep = pm.max_drawdown_episode(path)
    except DomainError:
        raise DomainError("series never falls below its running maximum, so it has no "
                          "maximum-drawdown episode") from None
    magnitude = -np.expm1(-ep.magnitude) if args.percent else ep.magnitude
    recovery = "CENSORED" if ep.censored else ep.recovery
    columns = ["peak", "bottom", "recovery", "duration", "magnitude"]
    return render(columns, [[ep.peak, ep.bottom, recovery, ep.duration, magnitude]], args.format)


def cmd_lst(args):
    returns = _read_returns(args)
    hit = pm.liquidation_stopping_time(path_from_returns(returns), args.threshold)
    date = ""
    if hit is not None and returns.labels and hit >= 1:
        date = returns.labels[hit - 1]
    row = [args.threshold, "NONE" if hit is None else hit, date]
    return render(["threshold", "stopping_time", "date"], [row], args.format)


def axiom_fixtures(seed: int, count: int = 100):
    gen = mc.rng(seed, 1)
    out = []
    for _ in range(count):
        steps = gen.standard_normal(int(gen.integers(10, 201)))
        out.append(np.concatenate([[0.0], np.cumsum(steps)]))
    return out


def cmd_axioms(args):
    fixtures = axiom_fixtures(args.seed)
    transforms = [tp.MAX_DURATION, tp.EPISODE_DURATION, tp.liquidation_time(args.threshold),
                  tp.MAX_DRAWDOWN]
    shifts, scales = [-3.0, 0.5, 7.25], [0.5, 2.0, 10.0]
    rows = []
    for t in transforms:
        tol = 1e-9 if t is tp.MAX_DRAWDOWN else 0.0
        report = tp.check_temporal_axioms(t, fixtures, shifts, scales, tol)
        for axiom, res in report.rows():
            example = "" if res.counterexample is None else json.dumps(
                {k: _json_value(v) for k, v in res.counterexample.items()}, sort_keys=True)
            rows.append([report.transform, axiom, "PASS" if res.passed else "FAIL",
                         res.checked, example])
    return render(["transform", "axiom", "result", "checked", "counterexample"], rows, args.format)


def cmd_simulate(args):
    if len(args.kappa) != 1:
        raise UsageError("simulate takes exactly one --kappa value")
    params = mc.Ar1Params(args.kappa[0], args.sigma_eps)
    returns = mc.simulate_ar1(params, args.n, args.seed, args.periods_per_year)
    if args.format == "json":
        return render(["date", "log_return"],
                      list(zip(returns.labels, returns.values.tolist())), "json")
    return format_returns_csv(returns)


def cmd_fit(args):
    returns = _read_returns(args)
    if len(returns) < 3:
        raise UsageError(f"fit needs at least 3 returns, got {len(returns)}")
    return render(["kappa_hat", "n"], [[mc.fit_ar1(returns), len(returns)]], args.format)


def cmd_kappa_table(args):
    rows = mc.kappa_table(args.kappa, args.n, args.seed, args.alpha, _spec(args), args.sigma_eps)
    columns = ["kappa", "volatility", "expected_shortfall", "ced",
               "conditional_expected_duration", "alpha", "window", "n"]
    return render(columns, [[getattr(r, c) for c in columns] for r in rows], args.format)


def cmd_kappa_corr(args):
    if args.window == FULL:
        raise UsageError("kappa-corr needs an integer metric --window")
    n_regimes = -(-args.n // args.regime_length)
    regimes = [mc.Regime(args.kappa[i % len(args.kappa)],
                         min(args.regime_length, args.n - i * args.regime_length))
               for i in range(n_regimes)]
    config = mc.CorrelationConfig(tuple(regimes), args.sigma_eps, args.window, args.sub_window,
                                  args.stride, args.alpha, args.seed)
    table = mc.kappa_correlation_experiment(config)
    d = table.correlations()
    return render(list(d) + ["n_windows"], [list(d.values()) + [table.n_windows]], args.format)


COMMANDS = {
    "paths": cmd_paths, "risk": cmd_risk, "episode": cmd_episode, "lst": cmd_lst,
    "axioms": cmd_axioms, "simulate": cmd_simulate, "fit": cmd_fit,
    "kappa-table": cmd_kappa_table, "kappa-corr": cmd_kappa_corr,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathrisk", description="Drawdown, duration and temporal risk analytics.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    io_opts = argparse.ArgumentParser(add_help=False)
    io_opts.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    io_opts.add_argument("--format", choices=("csv", "json"), default="csv")

    inp = argparse.ArgumentParser(add_help=False)
    inp.add_argument("-i", "--input", default="-", help="date,return CSV (default: stdin)")
    inp.add_argument("--periods-per-year", type=_positive_int, default=252)

    pct = argparse.ArgumentParser(add_help=False)
    pct.add_argument("--percent", action="store_true",
                     help="report drawdowns as 1 - exp(-D) instead of log units")

    win = argparse.ArgumentParser(add_help=False)
    win.add_argument("--alpha", type=_alpha, default=0.9)
    win.add_argument("--window", type=_window, default=180,
                     help="window length in periods, or 'full' (default 180)")
    win.add_argument("--stride", type=_positive_int, default=1)

    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--seed", type=_seed, default=0)
    sim.add_argument("--sigma-eps", type=float, default=mc.SIGMA_EPS,
                     help="innovation standard deviation (default 0.1)")

    sub.add_parser("paths", parents=[inp, io_opts, pct],
                   help="per-step path, running max, drawdown, peak time, duration")
    sub.add_parser("risk", parents=[inp, io_opts, pct, win],
                   help="volatility, ES, CED and duration risk measures")
    sub.add_parser("episode", parents=[inp, io_opts, pct],
                   help="peak, bottom and recovery of the maximum drawdown")
    p = sub.add_parser("lst", parents=[inp, io_opts], help="liquidation stopping time")
    p.add_argument("--threshold", type=_positive_int, required=True)
    p = sub.add_parser("axioms", parents=[io_opts],
                       help="check temporal-transformation axioms on seeded fixtures")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--threshold", type=_positive_int, default=5)
    p = sub.add_parser("simulate", parents=[io_opts, sim], help="simulate an AR(1) return series")
    p.add_argument("--kappa", type=_kappas, required=True)
    p.add_argument("--n", type=_positive_int, default=10_000)
    p.add_argument("--periods-per-year", type=_positive_int, default=252)
    sub.add_parser("fit", parents=[inp, io_opts], help="fit the AR(1) coefficient")
    p = sub.add_parser("kappa-table", parents=[io_opts, win, sim],
                       help="risk measures of simulated AR(1) series across kappa")
    p.add_argument("--kappa", type=_kappas, default=_kappas(DEFAULT_KAPPAS))
    p.add_argument("--n", type=_positive_int, default=10_000)
    p = sub.add_parser("kappa-corr", parents=[io_opts, sim],
                       help="correlate rolling kappa-hat with rolling risk measures")
    p.add_argument("--kappa", type=_kappas, default=_kappas("0.1,0.8"),
                   help="regime kappas, cycled (default 0.1,0.8)")
    p.add_argument("--n", type=_positive_int, default=20_000)
    p.add_argument("--regime-length", type=_positive_int, default=2000)
    p.add_argument("--window", type=_window, default=126, help="metric window (default 126)")
    p.add_argument("--sub-window", type=_positive_int, default=21,
                   help="sub-path length for CED and CE-duration (default 21)")
    p.add_argument("--stride", type=_positive_int, default=1)
    p.add_argument("--alpha", type=_alpha, default=0.9)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
        if args.output in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.output, "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
    except ConfigError as exc:
        parser.exit(2, f"pathrisk {args.command}: usage error: {exc}\n")
    except (PathRiskError, OSError) as exc:
        parser.exit(1, f"pathrisk {args.command}: error: {exc}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
