"""Command-line driver.

Subcommands::

    eval EXPR        evaluate an algebra expression and print the blade sum
    basis            print the isotropic dual basis and the orthonormal basis
    check            run the named identity suites (exit 1 on any failure)
    curvature        evaluate curvature components of a preset at a point

Exit codes: 0 success, 1 suite failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import checks, expr, geometry as gm
from . import hyperbolic as hb
from .exterior import AlgebraError, format_blades
from .fields import coordinate_vector

ZERO_PRINT_TOL = 1e-12


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperclifford",
        description="hyperbolic Clifford algebra kernel: evaluate expressions, "
        "print bases, verify the identity suites, sample curvature",
    )
    p.add_argument("--dim", type=int, default=2, help="dimension n of V (default 2)")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate an algebra expression")
    pe.add_argument("expression")
    pe.add_argument("--json", action="store_true", help="emit {blades, n} JSON")

    sub.add_parser("basis", help="print the isotropic and orthonormal bases")

    pc = sub.add_parser("check", help="run identity suites")
    pc.add_argument("--suite", default="all", help="suite name or 'all'")
    pc.add_argument("--cases", type=int, default=100)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--tol", type=float, default=1e-9)
    pc.add_argument(
        "--field-tol",
        type=float,
        default=1e-8,
        help="tolerance for the differential/geometry suites (default 1e-8)",
    )

    pv = sub.add_parser("curvature", help="curvature components of a chart preset")
    pv.add_argument("--preset", default="sphere", choices=["flat", "sphere", "custom"])
    pv.add_argument("--point", required=True, help="comma-separated chart point, e.g. '1.0,0.3'")
    pv.add_argument(
        "--gamma",
        action="append",
        default=[],
        metavar="s,m,v=EXPR",
        help="custom coefficient (1-based indices; EXPR over x1..xn)",
    )
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "basis":
            return cmd_basis(args)
        if args.command == "check":
            return cmd_check(args)
        if args.command == "curvature":
            return cmd_curvature(args)
    except (expr.ParseError, AlgebraError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 2


def cmd_eval(args) -> int:
    ast = expr.parse(args.expression, args.dim)
    value = expr.eval_ast(ast, args.dim)
    if args.json:
        blades = [
            {"mask": int(m), "coeff": float(value.coeffs[m])}
            for m in range(value.space.size)
            if abs(value.coeffs[m]) > ZERO_PRINT_TOL
        ]
        print(json.dumps({"n": args.dim, "blades": blades}))
    else:
        print(format_blades(value, ZERO_PRINT_TOL))
    return 0


def cmd_basis(args) -> int:
    n = args.dim
    print(f"isotropic dual basis of V + V* (n={n}):")
    for k in range(1, n + 1):
        print(f"  e{k}   (pairs to t{k}: t{k}*e{k} + e{k}*t{k} = 2)")
    for k in range(1, n + 1):
        print(f"  t{k}")
    c = 1.0 / np.sqrt(2.0)
    print("orthonormal basis:")
    for k in range(1, 2 * n + 1):
        v = hb.orthonormal_basis_vector(n, k)
        terms = []
        for i in range(n):
            if abs(v.primal[i]) > ZERO_PRINT_TOL:
                terms.append(f"{v.primal[i]:+.4f} e{i + 1}")
            if abs(v.dual[i]) > ZERO_PRINT_TOL:
                terms.append(f"{v.dual[i]:+.4f} t{i + 1}")
        square = "+1" if k <= n else "-1"
        print(f"  s{k} = {' '.join(terms)}   (s{k}*s{k} = {square})")
    print(f"coefficient 1/sqrt(2) = {c:.12f}")
    return 0


def cmd_check(args) -> int:
    names = checks.SUITE_NAMES if args.suite == "all" else (args.suite,)
    failed = False
    for name in names:
        tol = args.field_tol if name in ("differential", "geometry") else args.tol
        report = checks.run_suite(name, args.dim, args.cases, args.seed, tol)
        for line in report.lines():
            print(line)
        failed = failed or not report.passed
    return 1 if failed else 0


def cmd_curvature(args) -> int:
    n = args.dim
    if args.preset == "custom":
        entries = {}
        for spec_item in args.gamma:
            head, _, rhs = spec_item.partition("=")
            if not rhs:
                raise ValueError(f"bad --gamma {spec_item!r}; use s,m,v=EXPR")
            try:
                s, m, v = (int(x) for x in head.split(","))
            except Exception as e:
                raise ValueError(f"bad --gamma indices in {spec_item!r}") from e
            entries[(s, m, v)] = expr.parse_scalar_field(rhs, n)
        chart, conn = gm.custom_preset(n, entries)
    else:
        chart, conn = gm.preset(args.preset, n)
        n = chart.dim
    point = tuple(float(x) for x in args.point.split(","))
    if not chart.contains(point):
        raise ValueError(f"point {point} outside the preset chart box {chart.lower}..{chart.upper}")
    coords = [coordinate_vector(chart, i) for i in range(n)]
    print(f"preset={args.preset} point={list(point)}")
    for m in range(n):
        for v in range(m + 1, n):
            t = gm.torsion(conn, coords[m], coords[v]).at(point)
            print(f"torsion(d{m + 1},d{v + 1}) = {format_blades(t, ZERO_PRINT_TOL)}")
    for m in range(n):
        for v in range(m + 1, n):
            for r in range(n):
                rho = gm.curvature(conn, coords[m], coords[v], coords[r]).at(point)
                print(
                    f"rho(d{m + 1},d{v + 1},d{r + 1}) = {format_blades(rho, ZERO_PRINT_TOL)}"
                )
    return 0


if __name__ == "__main__":
    sys.exit(main())
