"""Command-line front end: solve, stability, curve, transform, kernel.

Data goes to --out (or stdout), human-readable summaries go to stderr.
Numbers are serialized with 17 significant digits so runs are
byte-reproducible.  Exit codes: 0 success, 2 malformed input, 3 domain
error.  The FRACSEQ_TOL environment variable overrides the default
distance/search tolerances of the stability commands.
"""

from __future__ import annotations

import argparse
import contextlib
import dataclasses
import json
import os
import sys

import numpy as np

from .sequences import WeightedSequence
from .solver import IvpSpec, solve_caputo, solve_gl, solve_rl
from .stability import (
    classify_spectrum,
    invertibility_check,
    matignon_check,
    symbol_curve,
)
from .ztransform import (
    inverse_ztransform,
    parseval_check,
    positive_support_test,
    ztransform,
)


class InputFormatError(Exception):
    """Malformed input file (exit code 2)."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _tol_override() -> float | None:
    raw = os.environ.get("FRACSEQ_TOL")
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError as exc:
        raise InputFormatError(f"FRACSEQ_TOL is not a number: {raw!r}") from exc


@contextlib.contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _load_spec(path: str) -> IvpSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return IvpSpec.from_json(data)
    except OSError as exc:
        raise InputFormatError(f"cannot read spec file: {exc}") from exc
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputFormatError(f"malformed problem spec: {exc}") from exc


def _load_matrix(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return np.array(
            [[complex(re, im) for re, im in row] for row in data], dtype=complex
        )
    except OSError as exc:
        raise InputFormatError(f"cannot read matrix file: {exc}") from exc
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed matrix file: {exc}") from exc


def _load_sequence(path: str) -> WeightedSequence:
    try:
        return WeightedSequence.from_csv(path)
    except OSError as exc:
        raise InputFormatError(f"cannot read sequence file: {exc}") from exc
    except ValueError as exc:
        raise InputFormatError(f"malformed sequence file: {exc}") from exc


def _write_solution(fh, u: WeightedSequence, index_name: str, index_scale: float) -> None:
    cols = [index_name]
    for j in range(u.dim):
        cols += [f"re_{j}", f"im_{j}"]
    fh.write(",".join(cols) + "\n")
    for k, row in zip(u.indices, u.values):
        cells = [_fmt(k * index_scale) if index_scale != 1.0 else str(int(k))]
        for v in row:
            cells += [_fmt(v.real), _fmt(v.imag)]
        fh.write(",".join(cells) + "\n")


def _verdict_dict(v) -> dict:
    out = {"classification": v.classification.value}
    if v.eigenvalue is not None:
        out["eigenvalue"] = [v.eigenvalue.real, v.eigenvalue.imag]
    out["witness"] = (
        None if v.witness is None else [v.witness.real, v.witness.imag]
    )
    return out


def cmd_solve(args) -> int:
    spec = _load_spec(args.spec)
    overrides = {
        name: getattr(args, name)
        for name in ("alpha", "steps", "h")
        if getattr(args, name) is not None
    }
    if overrides:
        spec = dataclasses.replace(spec, **overrides)
    solver = {"rl": solve_rl, "caputo": solve_caputo, "gl": solve_gl}[spec.kind]
    u = solver(spec)
    norms = np.linalg.norm(u.values, axis=1)
    tail = norms[-min(len(norms), max(2, len(norms) // 4)) :]
    monotone = bool(np.all(np.diff(tail) <= 1e-12 * np.maximum(tail[:-1], 1e-300)))
    with _open_out(args.out) as fh:
        if spec.kind == "gl":
            _write_solution(fh, u, "t", spec.h)
        else:
            _write_solution(fh, u, "n", 1.0)
    print(
        f"solve kind={spec.kind} alpha={_fmt(spec.alpha)} steps={spec.steps} "
        f"terminal_norm={_fmt(norms[-1])} monotone_tail={str(monotone).lower()}",
        file=sys.stderr,
    )
    return 0


def cmd_stability(args) -> int:
    tol = _tol_override()
    if (args.lambda_re is None) == (args.matrix is None):
        raise InputFormatError("provide exactly one of --lambda-re or --matrix")
    payload: dict
    if args.matrix is None:
        lam = complex(args.lambda_re, args.lambda_im)
        verdict = matignon_check(lam, args.alpha, tol=tol)
        payload = {"alpha": args.alpha, "lambda": [lam.real, lam.imag]}
        payload.update(_verdict_dict(verdict))
    else:
        mat = _load_matrix(args.matrix)
        verdicts = classify_spectrum(mat, args.alpha, tol=tol)
        payload = {
            "alpha": args.alpha,
            "eigenvalues": [[v.eigenvalue.real, v.eigenvalue.imag] for v in verdicts],
            "verdicts": [_verdict_dict(v) for v in verdicts],
        }
        if args.rho is not None:
            ok, dist = invertibility_check(
                mat, args.rho, args.alpha, samples=args.samples, tol=tol
            )
            payload["rho"] = args.rho
            payload["invertible"] = ok
            payload["min_distance"] = dist
    with _open_out(args.out) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return 0


def cmd_curve(args) -> int:
    curve = symbol_curve(args.rho, args.alpha, args.samples)
    with _open_out(args.out) as fh:
        curve.to_csv(fh)
    return 0


def cmd_transform(args) -> int:
    x = _load_sequence(args.seq)
    rho = args.rho if args.rho is not None else x.rho
    if args.mode == "forward":
        f = ztransform(x, rho, args.samples)
        theta = 2.0 * np.pi * np.arange(len(f)) / len(f)
        with _open_out(args.out) as fh:
            cols = ["theta"]
            for j in range(f.shape[1]):
                cols += [f"re_{j}", f"im_{j}"]
            fh.write(",".join(cols) + "\n")
            for t, row in zip(theta, f):
                cells = [_fmt(t)]
                for v in row:
                    cells += [_fmt(v.real), _fmt(v.imag)]
                fh.write(",".join(cells) + "\n")
    elif args.mode == "inverse":
        if args.window_start is None or args.window_end is None:
            raise InputFormatError(
                "inverse mode needs --window-start and --window-end"
            )
        f = ztransform(x, rho, args.samples)
        y = inverse_ztransform(f, rho, (args.window_start, args.window_end))
        with _open_out(args.out) as fh:
            y.to_csv(fh)
    elif args.mode == "parseval":
        err = parseval_check(x, rho, args.samples)
        with _open_out(args.out) as fh:
            fh.write(_fmt(err) + "\n")
    else:  # support
        diag = positive_support_test(x, rho, samples=args.samples)
        payload = {
            "positive": diag.positive,
            "literal_positive": diag.literal_positive,
            "agrees": diag.agrees,
            "radii": [float(r) for r in diag.radii],
            "integrals": [float(v) for v in diag.integrals],
            "ratios": [float(r) for r in diag.ratios],
            "thresholds": [float(t) for t in diag.thresholds],
        }
        with _open_out(args.out) as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_kernel(args) -> int:
    from .binomial import make_kernel

    kern = make_kernel(args.alpha, args.steps)
    with _open_out(args.out) as fh:
        fh.write("k,c_k\n")
        for k, c in enumerate(kern.coeffs):
            fh.write(f"{k},{_fmt(c)}\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracseq",
        description="Fractional difference equations: solvers, stability, transforms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an initial value problem from a JSON spec")
    p.add_argument("--spec", required=True, help="IvpSpec JSON file")
    p.add_argument("--alpha", type=float, default=None, help="override the spec order")
    p.add_argument("--steps", type=int, default=None, help="override the spec step count")
    p.add_argument("--h", type=float, default=None, help="override the spec step size")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stability", help="Matignon classification of a scalar or matrix")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda-re", type=float, default=None)
    p.add_argument("--lambda-im", type=float, default=0.0)
    p.add_argument("--matrix", default=None, help="JSON matrix file")
    p.add_argument("--rho", type=float, default=None, help="also check invertibility on this circle")
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("curve", help="sample the symbol curve on a circle")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("transform", help="circle transform of a sequence file")
    p.add_argument("--seq", required=True, help="sequence CSV file")
    p.add_argument("--mode", choices=["forward", "inverse", "parseval", "support"], required=True)
    p.add_argument("--rho", type=float, default=None, help="circle radius (default: file weight)")
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--window-start", type=int, default=None)
    p.add_argument("--window-end", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("kernel", help="dump the binomial kernel coefficients")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="truncation index N")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_kernel)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"fracseq: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"fracseq: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
