"""Command-line interface: one subcommand per library operation.

Every subcommand is a thin adapter over the library; results are printed as
CSV or a single JSON object on stdout (logs go to stderr).  With --output the
payload is written to a file and a reproducibility manifest is written next
to it as <output>.manifest.json.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 capacity error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import io
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .errors import CapacityError, DomainError, SqfullError
from . import constants as constants_mod
from . import paths as paths_mod
from . import squarefull as sq
from . import variance_ap as vap
from . import variance_short as vs

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CAPACITY = 4


def parse_count(text: str) -> int:
    """Integer accepted as 123, 46_674_434, or 5e9."""
    cleaned = text.strip().replace("_", "")
    try:
        return int(cleaned)
    except ValueError:
        pass
    try:
        value = float(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def fmt(x: float) -> str:
    """12 significant digits, '.' decimal, no separators."""
    return f"{x:.12g}"


def _sweep_values(text: str) -> list[int]:
    return [parse_count(part) for part in text.split(",") if part.strip()]


def _emit(payload: str, args: argparse.Namespace, started: float) -> None:
    output = getattr(args, "output", None)
    if not payload.endswith("\n"):
        payload += "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(payload)
        manifest = {
            "subcommand": args.command,
            "parameters": {
                k: v for k, v in sorted(vars(args).items()) if k not in ("command", "func", "output")
            },
            "version": __version__,
            "wall_time_s": round(time.time() - started, 6),
            "output_sha256": hashlib.sha256(payload.encode()).hexdigest(),
        }
        with open(output + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, default=str)
            fh.write("\n")
    else:
        sys.stdout.write(payload)


def _cmd_count(args) -> str:
    return str(sq.count_squarefull(args.x))


def _cmd_count_pairs(args) -> str:
    return str(sq.count_pairs_23(args.x))


def _cmd_delta(args) -> str:
    report = sq.delta_Q(args.x) if args.kind == "squarefull" else sq.delta_23(args.x)
    return json.dumps(
        {
            "kind": args.kind,
            "x": report.x,
            "exact": report.exact_count,
            "main": float(fmt(report.main_term)),
            "error": float(fmt(report.error)),
        }
    )


def _cmd_window(args) -> str:
    window = sq.squarefull_in_window(args.x, args.H)
    lines = ["n,a,b"]
    lines += [f"{n},{a},{b}" for n, a, b in window.members]
    return "\n".join(lines)


def _cmd_constants(args) -> str:
    rep = constants_mod.constant_c(P=args.P, Y=args.Y, res=args.res)
    return json.dumps(
        {
            "zeta_factor": rep.zeta_factor,
            "euler_product": rep.euler_product,
            "P": rep.euler_product_P,
            "euler_product_tail_bound": rep.euler_product_tail_bound,
            "weight_integral": rep.weight_integral,
            "Y": rep.weight_Y,
            "weight_res": rep.weight_res,
            "weight_tail_uncertainty": rep.weight_tail_uncertainty,
            "C": rep.C,
        }
    )


def _short_row(X: int, H: int | None, strata: int, exact: bool) -> tuple[int, int, int, float]:
    H_eff = H if H is not None else max(2, int(round(X**0.5)))
    rep = vs.short_interval_variance(X, H_eff, strata=strata, exact=exact)
    return X, H_eff, rep.strata, rep.statistic


def _pairs_row(X: int, strata: int, exact: bool) -> tuple[int, int, int, float]:
    rep = vs.divisor23_variance(X, strata=strata, exact=exact)
    return X, 0, rep.strata, rep.statistic


def _parallel_rows(worker, tasks: list[tuple], threads: int) -> list[tuple]:
    if threads <= 1 or len(tasks) <= 1:
        return [worker(*t) for t in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_star_apply, [(worker, t) for t in tasks]))


def _star_apply(packed):
    worker, task = packed
    return worker(*task)


def _cmd_variance_short(args) -> str:
    xs = _sweep_values(args.sweep) if args.sweep else [args.X]
    if any(x is None for x in (xs or [None])):
        raise DomainError("--X or --sweep required")
    if args.pairs:
        tasks = [(X, args.strata, args.exact) for X in xs]
        rows = _parallel_rows(_pairs_row, tasks, args.threads)
    else:
        tasks = [(X, args.H, args.strata, args.exact) for X in xs]
        rows = _parallel_rows(_short_row, tasks, args.threads)
    points = [(float(X), stat) for X, _, _, stat in rows if stat > 0]
    slope = vs.exponent_fit(points) if len(points) >= 3 else float("nan")
    lines = ["X,H,strata,statistic,fit_exponent"]
    for X, H, strata, stat in rows:
        lines.append(f"{X},{H},{strata},{fmt(stat)},{fmt(slope)}")
    return "\n".join(lines)


def _ap_row(x: int, q: int | None, alpha: int | None) -> vap.APVarianceReport:
    q_eff = q if q is not None else vap.nearest_prime(int(round(x**0.55)))
    return vap.ap_variance(x, q_eff, alpha=alpha)


def _cmd_variance_ap(args) -> str:
    xs = _sweep_values(args.sweep) if args.sweep else [args.x]
    tasks = [(x, args.q, args.alpha) for x in xs]
    reports = _parallel_rows(_ap_row, tasks, args.threads)
    lines = ["x,q,alpha,statistic,prediction,ratio"]
    for rep in reports:
        lines.append(
            f"{rep.x},{rep.q},{rep.alpha},{fmt(rep.statistic)},{fmt(rep.prediction)},{fmt(rep.ratio)}"
        )
    return "\n".join(lines)


def _cmd_ap_histogram(args) -> str:
    hist = vap.residue_histogram(args.x, args.q)
    lines = ["residue,count"]
    lines += [f"{l},{int(c)}" for l, c in enumerate(hist.counts)]
    return "\n".join(lines)


def _cmd_path(args) -> str:
    if args.kind == "prime":
        series = paths_mod.prime_path(args.x, args.H, grid=args.grid, literal=args.literal)
    else:
        series = paths_mod.squarefull_path(args.x, args.H, grid=args.grid, literal=args.literal)
    lines = ["t,value"]
    ts = series.t()
    for t, v in zip(ts, series.values):
        lines.append(f"{fmt(t)},{fmt(v)}")
    return "\n".join(lines)


def _read_csv_columns(path: str) -> tuple[list[str], list[list[float]]]:
    with open(path) as fh:
        text = fh.read()
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 2:
        raise DomainError(f"CSV {path} has no data rows")
    header = [h.strip() for h in lines[0].split(",")]
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise DomainError(f"CSV row has {len(parts)} fields, header has {len(header)}")
        rows.append([float(p) for p in parts])
    return header, rows


def _cmd_hurst(args) -> str:
    header, rows = _read_csv_columns(args.input)
    if "value" not in header:
        raise DomainError("path CSV must have a 'value' column")
    values = np.array([row[header.index("value")] for row in rows])
    est = paths_mod.hurst_estimate(values, method=args.method)
    return json.dumps({"method": est.method, "value": est.value, "stderr": est.stderr})


def _cmd_fit(args) -> str:
    header, rows = _read_csv_columns(args.input)
    xcol = args.xcol if args.xcol else header[0]
    ycol = args.ycol if args.ycol else header[-1]
    if xcol not in header or ycol not in header:
        raise DomainError(f"columns {xcol!r}/{ycol!r} not in header {header}")
    xi, yi = header.index(xcol), header.index(ycol)
    points = [(row[xi], row[yi]) for row in rows]
    return fmt(vs.exponent_fit(points))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqfull",
        description="Square-full integer counts, variance statistics, and path diagnostics",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write result to file plus <file>.manifest.json")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        return p

    p = add("count", _cmd_count, help="exact count of square-full integers <= x")
    p.add_argument("--x", type=parse_count, required=True)

    p = add("count-pairs", _cmd_count_pairs, help="exact count of pairs a^2 b^3 <= x")
    p.add_argument("--x", type=parse_count, required=True)

    p = add("delta", _cmd_delta, help="exact count minus smooth main term")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--kind", choices=("squarefull", "pairs"), default="squarefull")

    p = add("window", _cmd_window, help="square-full members of (x, x+H]")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--H", type=parse_count, required=True)

    p = add("constants", _cmd_constants, help="the limit constant C and its factors")
    p.add_argument("--P", type=parse_count, default=constants_mod.DEFAULT_PRIME_BOUND)
    p.add_argument("--Y", type=float, default=constants_mod.DEFAULT_Y)
    p.add_argument("--res", type=parse_count, default=constants_mod.DEFAULT_RES)

    p = add("variance-short", _cmd_variance_short, help="short-interval variance statistics")
    p.add_argument("--X", type=parse_count)
    p.add_argument("--H", type=parse_count, help="window length (default: X^(1/2))")
    p.add_argument("--strata", type=parse_count, default=512)
    p.add_argument("--exact", action="store_true", help="exact piecewise integration")
    p.add_argument("--pairs", action="store_true", help="long-count pair variance instead")
    p.add_argument("--sweep", help="comma-separated X values")

    p = add("variance-ap", _cmd_variance_ap, help="arithmetic-progression variance")
    p.add_argument("--x", type=parse_count)
    p.add_argument("--q", type=parse_count, help="odd prime modulus (default: nearest prime to x^0.55)")
    p.add_argument("--alpha", type=parse_count, help="quadratic nonresidue override")
    p.add_argument("--sweep", help="comma-separated x values")

    p = add("ap-histogram", _cmd_ap_histogram, help="residue histogram of square-fulls in (x, 2x]")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--q", type=parse_count, required=True)

    p = add("path", _cmd_path, help="normalized partial-sum path over (x, x+tH]")
    p.add_argument("--kind", choices=("prime", "squarefull"), required=True)
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--H", type=parse_count, required=True)
    p.add_argument("--grid", type=parse_count, default=4096)
    p.add_argument("--literal", action="store_true", help="paper-verbatim summand")

    p = add("hurst", _cmd_hurst, help="Hurst exponent of a path CSV")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--method", choices=("aggregated_variance", "rescaled_range"), default="aggregated_variance"
    )

    p = add("fit", _cmd_fit, help="log-log OLS slope of a two-column CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--xcol")
    p.add_argument("--ycol")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        payload = args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, SqfullError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(payload, args, started)
    return 0


if __name__ == "__main__":
    sys.exit(main())
