"""Command-line front end.

Exit status: 0 when the check passes, 1 when it fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .applications import DegenerateSimplex, barycentric
from .identity import (
    DEFAULT_TOLERANCE,
    DimensionMismatch,
    delta,
    delta_expanded,
    residual,
    signed_volume,
)
from .io import ParseError, dumps, format_scalar, load_configuration, load_points, parse_point, write_report
from .scalar_linalg import BACKENDS, EXACT, NonFiniteInput, convert

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000, 3)


def _scalars(values):
    return [format_scalar(x) for x in values]


def _emit(report: dict, out) -> None:
    sys.stdout.write(dumps(report))
    if out:
        write_report(report, out)


def cmd_verify(args) -> int:
    start = time.perf_counter()
    cfg = load_configuration(args.input, args.backend)
    res = residual(cfg, args.tolerance)
    report = {
        "command": "verify",
        "backend": args.backend,
        "dimension": cfg.dimension,
        "deltas": _scalars(res.coefficients.deltas),
        "signs": list(res.coefficients.signs),
        "coefficients": _scalars(res.coefficients.signed),
        "residual_vector": _scalars(res.vector),
        "residual_scalar": format_scalar(res.scalar),
        "verdict": "pass" if res.passed else "fail",
        "tolerance": "exact" if res.tolerance is None else res.tolerance,
        "runtime_ms": _ms(start),
    }
    _emit(report, args.out)
    if args.figure:
        from .plotting import plot_coefficients

        plot_coefficients(cfg.points, res.coefficients.signed, args.figure)
    return EXIT_PASS if res.passed else EXIT_FAIL


def cmd_delta(args) -> int:
    start = time.perf_counter()
    cfg = load_configuration(args.input, args.backend)
    i = args.index
    if not 0 <= i < cfg.size:
        raise DimensionMismatch(f"index {i} outside 0..{cfg.size - 1}")
    direct, expanded = delta(cfg, i), delta_expanded(cfg, i)
    if args.backend == EXACT:
        equal = direct == expanded
    else:
        equal = abs(direct - expanded) <= args.tolerance * max(abs(direct), abs(expanded), 1.0)
    report = {
        "command": "delta",
        "backend": args.backend,
        "index": i,
        "delta": format_scalar(direct),
        "delta_expanded": format_scalar(expanded),
        "signed_volume": format_scalar(signed_volume(cfg, i)),
        "verdict": "pass" if equal else "fail",
        "runtime_ms": _ms(start),
    }
    _emit(report, args.out)
    return EXIT_PASS if equal else EXIT_FAIL


def cmd_barycentric(args) -> int:
    start = time.perf_counter()
    dimension, points = load_points(args.simplex)
    if args.point is not None:
        query = parse_point(args.point)
    elif len(points) == dimension + 2:
        query = points.pop()
    else:
        raise DimensionMismatch("no --point given and the file has no trailing query point")
    if len(points) != dimension + 1:
        raise DimensionMismatch(f"simplex needs {dimension + 1} points, file has {len(points)}")
    if len(query) != dimension:
        raise DimensionMismatch(f"query point has {len(query)} coordinates, expected {dimension}")

    simplex = [[convert(x, args.backend) for x in p] for p in points]
    query = [convert(x, args.backend) for x in query]
    report = {"command": "barycentric", "backend": args.backend}
    try:
        lam = barycentric(simplex, query, args.backend)
    except DegenerateSimplex as exc:
        report.update(verdict="fail", error="DegenerateSimplex", witness=format_scalar(exc.witness),
                      runtime_ms=_ms(start))
        _emit(report, args.out)
        return EXIT_FAIL
    rebuilt = lam.reconstruct(simplex)
    if args.backend == EXACT:
        ok = list(rebuilt) == query and sum(lam.lambdas) == 1
    else:
        reach = max(abs(x) for p in simplex + [query] for x in p) or 1.0
        ok = max(abs(a - b) for a, b in zip(rebuilt, query)) <= args.tolerance * reach
    report.update(
        lambdas=_scalars(lam.lambdas),
        reconstruction=_scalars(rebuilt),
        point=_scalars(query),
        verdict="pass" if ok else "fail",
        runtime_ms=_ms(start),
    )
    _emit(report, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    from .verification import run_property_suite

    start = time.perf_counter()
    lo, hi = args.dims
    result = run_property_suite(range(lo, hi + 1), args.trials, args.seed,
                                distribution=args.distribution, tolerance=args.tolerance,
                                workers=args.workers)
    report = {
        "command": "suite",
        "trials_per_dimension": args.trials,
        "distribution": args.distribution,
        "tolerance": args.tolerance,
        "verdict": "pass" if result.passed else "fail",
        **result.to_dict(),
        "runtime_ms": _ms(start),
    }
    write_report(report, args.out)
    summary = {k: report[k] for k in ("command", "verdict", "trial_count", "failure_count", "max_float_residual")}
    sys.stdout.write(dumps({**summary, "out": str(args.out)}))
    if args.figure:
        from .plotting import plot_suite

        plot_suite(report, args.figure, args.tolerance)
    return EXIT_PASS if result.passed else EXIT_FAIL


def _dims(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}")
    return lo_i, hi_i


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplexsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--backend", choices=BACKENDS, default=EXACT)
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="float backend only")
        p.add_argument("--out", type=Path, help="also write the report here")

    p = sub.add_parser("verify", help="check the vector identity on n+2 points")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--figure", type=Path, help="write a coefficient plot (png/pdf/svg)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("delta", help="one coefficient by both computation paths")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--index", required=True, type=int)
    common(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("barycentric", help="barycentric coordinates of a point")
    p.add_argument("--simplex", required=True, type=Path)
    p.add_argument("--point", help='coordinates, e.g. "1/4,1/2"')
    common(p)
    p.set_defaults(func=cmd_barycentric)

    p = sub.add_parser("suite", help="seeded randomized property suite")
    p.add_argument("--dims", type=_dims, default=(1, 6), help="dimension range a..b")
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--distribution", choices=("mixed", "integer", "rational", "near_degenerate"),
                   default="mixed")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--figure", type=Path, help="write a residual-by-dimension plot")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, DimensionMismatch, NonFiniteInput, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
