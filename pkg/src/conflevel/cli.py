"""Command-line entry point: ``conflevel <subcommand> ...``.

Exit status is 0 on success, 1 on a fatal input error and 2 when a table
was processed but some rows failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .bayes_grid import ParameterGrid, grid_confidence, posterior, verify_shift_identity
from .calibrate import SummaryShape, coverage_experiment, posterior_calibration
from .errors import ConflevelError
from .inference import (
    EstimateSign,
    confidence_distribution,
    confidence_interval,
    confidence_level,
    format_percent,
    p_to_confidence,
    star_bound,
    two_tailed_p,
)
from .model import SampleSummary, hypothesis_code, parse_hypothesis
from .plot import render_confidence_plot
from .specialfn import Normal, StudentT
from .tables import (
    DEFAULT_STARS,
    StarP,
    annotate_table,
    emit_report,
    parse_p_value,
    parse_results_csv,
    parse_stars,
)

EXIT_OK, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2


def _family(args):
    return Normal() if args.df is None else StudentT(args.df)


def _summary(args):
    return SampleSummary(args.estimate, args.se, _family(args))


def _hypotheses(args, default=("gt:0",)):
    return [parse_hypothesis(h) for h in (args.hypothesis or default)]


def _write(data: bytes, path=None):
    if path and path != "-":
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _dump(obj):
    return (json.dumps(obj, indent=2) + "\n").encode("utf-8")


def _statement_dict(st, decimals):
    return {
        "hypothesis": hypothesis_code(st.hypothesis),
        "confidence": st.confidence,
        "display": format_percent(st.confidence, decimals),
        "kind": st.kind.value,
        "source": st.source,
    }


def cmd_p2conf(args):
    sign = EstimateSign.NEGATIVE if args.negative else EstimateSign.NON_NEGATIVE
    stars = parse_stars(args.stars) if args.stars else DEFAULT_STARS
    p = parse_p_value(args.p, stars)
    if p is None:
        raise ConflevelError("empty p value")
    st = star_bound(p.alpha, sign, p.token) if isinstance(p, StarP) else p_to_confidence(p, sign)
    if args.format == "json":
        _write(_dump({"schema_version": 1, "statement": _statement_dict(st, args.decimals)}))
    else:
        op = {"Exact": "=", "LowerBound": ">", "UpperBound": "<"}[st.kind.value]
        _write(f"confidence ({st.hypothesis}) {op} {format_percent(st.confidence, args.decimals)}\n".encode())
    return EXIT_OK


def cmd_conf(args):
    s = _summary(args)
    cd = confidence_distribution(s)
    statements = [confidence_level(cd, h) for h in _hypotheses(args)]
    lo, hi = confidence_interval(cd, args.level)
    p = two_tailed_p(s)
    if args.format == "json":
        _write(
            _dump(
                {
                    "schema_version": 1,
                    "estimate": s.estimate,
                    "standard_error": s.standard_error,
                    "family": str(s.family),
                    "p_value": p,
                    "statements": [_statement_dict(st, args.decimals) for st in statements],
                    "interval": {"lo": lo, "hi": hi, "level": args.level},
                }
            )
        )
    else:
        lines = [f"p = {format_percent(p, args.decimals + 1)} (two-tailed, null x = 0)"]
        lines += [f"confidence ({st.hypothesis}) = {format_percent(st.confidence, args.decimals)}" for st in statements]
        lines.append(f"{format_percent(args.level, 0)} interval: {lo:.4g} to {hi:.4g}")
        _write(("\n".join(lines) + "\n").encode())
    return EXIT_OK


def cmd_interval(args):
    lo, hi = confidence_interval(confidence_distribution(_summary(args)), args.level)
    if args.format == "json":
        _write(_dump({"schema_version": 1, "lo": lo, "hi": hi, "level": args.level}))
    else:
        _write(f"{format_percent(args.level, 0)} interval: {lo:.4g} to {hi:.4g}\n".encode())
    return EXIT_OK


def cmd_table(args):
    stars = parse_stars(args.stars) if args.stars else None
    if args.file == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.file, "rb") as fh:
            data = fh.read()
    table = parse_results_csv(data, stars)
    annotated, failures = annotate_table(table.rows, _hypotheses(args), args.level)
    errors = table.errors + failures
    _write(emit_report(annotated, args.format, args.decimals, errors), args.output)
    for e in errors:
        print(f"conflevel: line {e.line} ({e.label}): {e.message}", file=sys.stderr)
    return EXIT_PARTIAL if errors else EXIT_OK


def cmd_plot(args):
    cd = confidence_distribution(_summary(args))
    shaded = parse_hypothesis(args.hypothesis or "gt:0")
    _write(render_confidence_plot(cd, shaded, args.format, args.decimals), args.output)
    return EXIT_OK


def cmd_grid_check(args):
    grid = ParameterGrid(args.grid_min, args.grid_max, args.grid_step)
    family = _family(args)
    post = posterior(grid, args.estimate, family, args.se, snap=args.snap)
    cd = confidence_distribution(_summary(args))
    rows = []
    for h in _hypotheses(args, default=("gt:0", "gt:1")):
        g = grid_confidence(post, h)
        c = confidence_level(cd, h).confidence
        rows.append({"hypothesis": hypothesis_code(h), "grid": g, "continuous": c, "difference": g - c})
    report = {
        "schema_version": 1,
        "grid": {"min": grid.min, "max": grid.max, "step": grid.step, "n": grid.n},
        "family": str(family),
        "x_sample": args.estimate,
        "snap": args.snap,
        "snap_distance": post.snap_distance,
        "null_truncation": post.null_truncation,
        "shift_truncation": post.shift_truncation,
        "shift_identity_discrepancy": verify_shift_identity(grid, args.estimate, family, args.se, snap=args.snap),
        "hypotheses": rows,
    }
    if args.format == "json":
        _write(_dump(report))
    else:
        lines = [
            f"grid [{grid.min:g}, {grid.max:g}] step {grid.step:g} ({grid.n} hypotheses), {family}",
            f"max |Bayes posterior - shifted null| = {report['shift_identity_discrepancy']:.3e}",
            f"truncation: null {post.null_truncation:.3e}, shifted {post.shift_truncation:.3e}",
        ]
        for r in rows:
            lines.append(
                f"{r['hypothesis']}: grid {r['grid']:.6f}  continuous {r['continuous']:.6f}  diff {r['difference']:+.2e}"
            )
        _write(("\n".join(lines) + "\n").encode())
    return EXIT_OK


def cmd_calibrate(args):
    shape = SummaryShape(_family(args), args.se)
    coverage = [
        coverage_experiment(args.true_value, shape, lv, args.trials, args.seed + k).to_dict()
        for k, lv in enumerate(args.level)
    ]
    grid = ParameterGrid(args.grid_min, args.grid_max, args.grid_step)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        calib = posterior_calibration(grid, shape, args.threshold, args.trials, args.bins, args.seed)
    for w in caught:
        print(f"conflevel: warning: {w.message}", file=sys.stderr)
    _write(_dump({"schema_version": 1, "coverage": coverage, "calibration": calib.to_dict()}), args.output)
    ok = calib.calibrated and all(c["within_3se"] for c in coverage)
    return EXIT_OK if ok else EXIT_PARTIAL


def _add_summary_args(p, estimate_required=True):
    p.add_argument("--estimate", type=float, required=estimate_required, help="point estimate (e.g. difference of means)")
    p.add_argument("--se", type=float, required=True, help="standard error of the estimate")
    p.add_argument("--df", type=float, help="Student-t degrees of freedom (omit for the normal family)")


def _add_output_args(p, formats, default):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--decimals", type=int, default=1, help="decimal places of displayed percentages")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflevel", description="Confidence levels for hypotheses from summary statistics and p-values."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("p2conf", help="convert a two-tailed p (or star) into confidence that x > 0")
    p.add_argument("p", help="p value: 0.0211, 2.11%%, '*', '<.05'")
    p.add_argument("--negative", action="store_true", help="the estimate is negative")
    p.add_argument("--stars", help="star convention, e.g. '*=0.05,**=0.01,***=0.001'")
    _add_output_args(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_p2conf)

    p = sub.add_parser("conf", help="confidence levels for hypotheses from a summary")
    _add_summary_args(p)
    p.add_argument("--hypothesis", action="append", help="gt:c, lt:c or between:a,b (repeatable)")
    p.add_argument("--level", type=float, default=0.95)
    _add_output_args(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_conf)

    p = sub.add_parser("interval", help="equal-tailed confidence interval")
    _add_summary_args(p)
    p.add_argument("--level", type=float, default=0.95)
    _add_output_args(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("table", help="annotate a CSV results table")
    p.add_argument("file", help="CSV file, or - for stdin")
    p.add_argument("--hypothesis", action="append", help="gt:c, lt:c or between:a,b (repeatable)")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--stars", help="star convention, e.g. '*=0.05,**=0.01,***=0.001'")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    _add_output_args(p, ("json", "text", "csv"), "json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("plot", help="draw the confidence distribution")
    _add_summary_args(p)
    p.add_argument("--hypothesis", help="region to shade (default gt:0)")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    _add_output_args(p, ("svg", "ascii"), "svg")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("grid-check", help="compare the discrete Bayesian grid posterior with the shortcut")
    _add_summary_args(p)
    p.add_argument("--hypothesis", action="append", help="hypotheses to compare (default gt:0, gt:1)")
    p.add_argument("--grid-min", type=float, default=-3.0)
    p.add_argument("--grid-max", type=float, default=3.0)
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--snap", choices=("linear", "nearest"), default="linear")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_grid_check)

    p = sub.add_parser("calibrate", help="Monte Carlo coverage and calibration report (JSON)")
    p.add_argument("--se", type=float, default=1.0, help="standard error of simulated estimates")
    p.add_argument("--df", type=float, help="Student-t degrees of freedom (omit for normal)")
    p.add_argument("--true-value", type=float, default=0.0, help="true parameter for the coverage runs")
    p.add_argument("--level", type=float, action="append", help="interval levels (default 0.8 0.9 0.95 0.99)")
    p.add_argument("--threshold", type=float, default=0.0, help="threshold c of the hypothesis x > c")
    p.add_argument("--grid-min", type=float, default=-10.0)
    p.add_argument("--grid-max", type=float, default=10.0)
    p.add_argument("--grid-step", type=float, default=0.01)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means partial success
        return EXIT_OK if exc.code in (0, None) else EXIT_FATAL
    if getattr(args, "level", None) is None and args.command == "calibrate":
        args.level = [0.8, 0.9, 0.95, 0.99]
    try:
        return args.func(args)
    except (ConflevelError, OSError) as exc:
        print(f"conflevel: error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
