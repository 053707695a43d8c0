"""Command-line front end.

Subcommands:

    eigen     real eigenvalues with multiplicities and kernel bases (JSON)
    tangents  emanation directions at a diagonal point, with the defective
              directions routed through the one-sided analysis (JSON)
    trace     brute-force spectrum sampling: CSV point cloud and optional SVG
    verify    recompute one fixture's known constants and diff

Matrices come from --fixture NAME or --file PATH (JSON object or text, see
fucik.matrixio).  Exit codes: 0 ok, 2 input error, 3 spectral precondition
error, 4 capacity error, 5 verification failure.  Floats are printed with 12
significant digits; infinite slopes serialize as the string "inf".
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .degenerate import classify, defective_directions, one_sided_tangents
from .errors import FucikError, InvalidInputError, VerificationError
from .fixtures import get_fixture
from .linalg import Tolerances, spectral_data
from .matrixio import load_matrix
from .tangents import tangent_directions
from .tracer import TraceWindow, csv_text, trace, write_csv, write_svg
from .verify import format_rows, verify_fixture


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(format(x, ".12g"))
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _emit(payload, json_path):
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _matrix_from_args(args) -> np.ndarray:
    if bool(args.fixture) == bool(args.file):
        raise InvalidInputError("choose exactly one matrix source: --fixture NAME or --file PATH")
    if args.fixture:
        return get_fixture(args.fixture).matrix
    return load_matrix(args.file)


def _tolerances(args) -> Tolerances:
    tol = Tolerances()
    if args.tol is not None:
        if args.tol <= 0:
            raise InvalidInputError("--tol must be positive")
        tol = tol.with_residual(args.tol)
    return tol


def _snap_lambda(A, lam, tol):
    """Accept a --lambda within 1e-6*scale of a computed eigenvalue."""
    sd = spectral_data(A, tol)
    near = sd.nearest(lam)
    if near is not None and abs(near.value - lam) <= 1e-6 * sd.scale:
        return near.value, sd
    return lam, sd  # let the kernel extraction raise the spectral error


def cmd_eigen(args) -> int:
    A = _matrix_from_args(args)
    sd = spectral_data(A, _tolerances(args))
    payload = {
        "n": A.shape[0],
        "eigenvalues": [
            {
                "value": e.value,
                "algebraic": e.algebraic_mult,
                "geometric": e.geometric_mult,
                "kernel_basis": e.kernel_basis.T,
                "adjoint_kernel_basis": e.adjoint_kernel_basis.T,
            }
            for e in sd.eigenvalues
        ],
    }
    _emit(payload, args.json)
    return 0


def cmd_tangents(args) -> int:
    A = _matrix_from_args(args)
    tol = _tolerances(args)
    lam, _ = _snap_lambda(A, args.lam, tol)
    dirs = tangent_directions(A, lam, tol)
    payload = {"lambda": lam, "directions": [d.to_json() for d in dirs], "one_sided": []}
    # defective directions get the one-sided treatment automatically
    for u0 in defective_directions(A, lam, tol):
        cls = classify(A, lam, u0, tol)
        if cls.tag == "case1":
            payload["one_sided"].append(
                {"class": "case1", "u0": list(u0), "eta0": "inf", "slope": 1.0}
            )
        elif cls.tag == "case2":
            payload["one_sided"].append(one_sided_tangents(A, lam, u0, tol).to_json())
    _emit(payload, args.json)
    return 0


def cmd_trace(args) -> int:
    A = _matrix_from_args(args)
    tol = _tolerances(args)
    a0, a1, b0, b1 = args.window
    window = TraceWindow(a0, a1, b0, b1, args.grid)
    ps = trace(A, window, tol)
    if args.csv:
        write_csv(ps, args.csv)
    else:
        sys.stdout.write(csv_text(ps))
    if args.svg:
        overlays = _tangent_overlays(A, window, tol)
        write_svg(ps, args.svg, tangents=overlays)
    print(
        f"traced {len(ps.points)} points in {len(ps.branches)} branches",
        file=sys.stderr,
    )
    return 0


def _tangent_overlays(A, window, tol):
    """(lambda, slope) overlay lines for every eigenvalue inside the window."""
    overlays = []
    sd = spectral_data(A, tol)
    for e in sd.eigenvalues:
        lam = e.value
        if not (window.alpha_min <= lam <= window.alpha_max and window.beta_min <= lam <= window.beta_max):
            continue
        slopes = set()
        try:
            for d in tangent_directions(A, lam, tol):
                if not d.continuum:
                    slopes.add(d.slope)
            for u0 in defective_directions(A, lam, tol):
                cls = classify(A, lam, u0, tol)
                if cls.tag == "case1":
                    slopes.add(1.0)
                elif cls.tag == "case2":
                    ost = one_sided_tangents(A, lam, u0, tol)
                    for entry in ost.plus + ost.minus:
                        slopes.add(entry.slope)
        except FucikError:
            continue
        overlays.extend((lam, s) for s in sorted(slopes, key=lambda s: (math.isinf(s), s)))
    return overlays


def cmd_verify(args) -> int:
    rows = verify_fixture(args.name, _tolerances(args))
    print(format_rows(args.name, rows))
    if not all(r.ok for r in rows):
        raise VerificationError(f"fixture {args.name}: checks failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fucik", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--fixture", help="built-in matrix name (A1..A6, As<N>)")
    src.add_argument("--file", help="matrix file: JSON or whitespace text")
    src.add_argument("--tol", type=float, default=None, help="override the residual tolerance")
    src.add_argument("--json", default=None, help="write JSON output to this path")

    p = sub.add_parser("eigen", parents=[src], help="real eigenvalues and kernel bases")
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("tangents", parents=[src], help="emanation directions at (lambda, lambda)")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.set_defaults(func=cmd_tangents)

    p = sub.add_parser("trace", parents=[src], help="brute-force spectrum sampling")
    p.add_argument("--window", nargs=4, type=float, required=True, metavar=("AMIN", "AMAX", "BMIN", "BMAX"))
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--csv", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--svg", default=None, help="SVG plot path")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="check a fixture against its stored constants")
    p.add_argument("name")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except FucikError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
