"""Command-line front end.

Exit codes: 0 success, 2 usage or invalid input, 3 unparsable input,
4 enumeration budget exceeded, 5 ``verify`` found a mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

import numpy as np

from . import dichotomy
from .cyclovalue import approx, format_value, to_json
from .gauss import gauss_sum
from .ntheory import is_prime_power
from .oracle import DEFAULT_BUDGET, BudgetExceededError, brute_counts, brute_value
from .polyring import DegreeError, ParseError, parse_poly, write_multigraph
from .solver import z_eval

EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_MISMATCH = 5

DEFAULT_VERIFY_TOL = 1e-6


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    """``@path`` reads the argument from a file."""
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", exc.pos) from None


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


# ---------------------------------------------------------------- commands


def _poly(args):
    if args.N < 1 or args.n < 0:
        raise UsageError(f"need N >= 1 and n >= 0, got N={args.N}, n={args.n}")
    return parse_poly(_read_arg(args.poly), args.N, args.n)


def cmd_eval(args) -> int:
    value = z_eval(args.N, _poly(args))
    _emit(args, to_json(value), format_value(value))
    return 0


def cmd_brute(args) -> int:
    counts = brute_counts(args.N, _poly(args), args.budget)
    z = brute_value(counts)
    payload = {"N": str(args.N), "counts": [str(c) for c in counts.counts], "value": _complex_json(z)}
    _emit(args, payload, f"counts {' '.join(map(str, counts.counts))}\nvalue {z.real:.12g} {z.imag:+.12g}i")
    return 0


def cmd_verify(args) -> int:
    f = _poly(args)
    tol = DEFAULT_VERIFY_TOL if args.tol is None else args.tol
    value = z_eval(args.N, f)
    brute = brute_value(brute_counts(args.N, f, args.budget))
    solved = approx(value).value
    if solved is None:
        raise UsageError("solver value is too large to compare in double precision")
    gap = abs(solved - brute)
    bound = tol * max(1.0, args.N ** (f.n / 2))
    ok = gap <= bound
    payload = {
        "agree": ok,
        "discrepancy": gap,
        "bound": bound,
        "solver": to_json(value),
        "brute": _complex_json(brute),
    }
    _emit(args, payload, f"{'agree' if ok else 'MISMATCH'}: solver {format_value(value)}, "
                         f"brute {brute.real:.12g} {brute.imag:+.12g}i, discrepancy {gap:.3g}")
    return 0 if ok else EXIT_MISMATCH


def cmd_gauss(args) -> int:
    value = gauss_sum(args.a, args.b)
    _emit(args, to_json(value), format_value(value))
    return 0


def cmd_classify(args) -> int:
    if is_prime_power(args.q) is None:
        raise UsageError(f"q = {args.q} is not a prime power")
    h = parse_poly(_read_arg(args.h), args.q, 2)
    tol = dichotomy.DEFAULT_TOL if args.tol is None else args.tol
    verdict = dichotomy.classify_S(args.q, h, symmetrize=args.symmetrize, tol=tol)
    _emit(args, verdict.to_json(), f"{verdict.outcome}: {verdict.witness}")
    return 0


def _witness_json(w):
    if isinstance(w, dichotomy.Rank1Witness):
        return {"rows": list(w.rows), "cols": list(w.cols), "det": w.det}
    if isinstance(w, tuple):
        return list(w)
    return w


def cmd_matrix_test(args) -> int:
    data = _load_json(args.file)
    tol = dichotomy.DEFAULT_TOL if args.tol is None else args.tol
    try:
        if args.test == "rank1":
            if "entries" in data:
                B = np.asarray(data["entries"], dtype=float)
            else:
                B = np.abs(dichotomy.ExponentMatrix.from_json(data).to_complex())
            w = dichotomy.rank1_violation(B, tol)
            payload = {"test": "rank1", "ok": w is None, "witness": _witness_json(w)}
        else:
            A = dichotomy.ExponentMatrix.from_json(data)
            if args.test == "unitary":
                r = dichotomy.is_discrete_unitary(A, tol)
                payload = {"test": "unitary", "ok": r.ok, "witness": r.witness}
            elif args.test == "ortho":
                pair = dichotomy.orthogonality_violation(A, tol)
                payload = {"test": "ortho", "ok": pair is None, "witness": _witness_json(pair)}
            elif args.test == "group":
                r = dichotomy.group_condition(A, tol)
                payload = {"test": "group", "ok": r.ok, "witness": _witness_json(r.witness)}
            else:
                verdict = dichotomy.generalized_group_condition(A, tol)
                payload = {"test": "ggc", "ok": verdict.outcome == dichotomy.TRACTABLE, **verdict.to_json()}
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{args.file}: malformed matrix JSON ({exc})") from None
    witness = payload.get("witness")
    _emit(args, payload, f"{args.test}: {'pass' if payload['ok'] else 'fail'}"
                         + ("" if witness is None else f" ({witness})"))
    return 0


def cmd_gadget(args) -> int:
    if args.kind == "hp":
        if len(args.params) != 2:
            raise UsageError("usage: gadget hp p M")
        p, M = args.params
        gadget = dichotomy.gadget_Hp(p, M)
    else:
        if len(args.params) != 1:
            raise UsageError("usage: gadget star M")
        gadget = dichotomy.gadget_star(args.params[0])
    G = gadget.graph
    if args.json:
        payload = {"n": G.n, "u": gadget.u, "v": gadget.v,
                   "edges": [[a, b, mult] for (a, b), mult in G.edges.items()]}
        print(json.dumps(payload))
    else:
        sys.stdout.write(f"# u={gadget.u} v={gadget.v}\n" + write_multigraph(G))
    return 0


def cmd_bp(args) -> int:
    data = _load_json(args.file)
    try:
        A = dichotomy.ExponentMatrix.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{args.file}: malformed matrix JSON ({exc})") from None
    B = dichotomy.bp_matrix(A, args.p)
    rows = [[float(x) for x in row] for row in B]
    _emit(args, {"m": A.m, "p": args.p, "entries": rows},
          "\n".join(" ".join(f"{x:.12g}" for x in row) for row in rows))
    return 0


# ------------------------------------------------------------------ parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expsum", description="Exact quadratic exponential sums and hardness tests.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="max points brute force may visit")
    parser.add_argument("--tol", type=float, default=None, help="numeric tolerance")
    parser.add_argument("--seed", type=int, default=0, help="random seed")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("eval", cmd_eval, "exact Z(N, f) for quadratic f"),
        ("brute", cmd_brute, "value counts and Z(N, f) by enumeration"),
        ("verify", cmd_verify, "compare the solver with brute force"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("N", type=int)
        p.add_argument("n", type=int)
        p.add_argument("poly", help="polynomial text, or @file")
        p.set_defaults(func=fn)

    p = sub.add_parser("gauss", help="quadratic Gauss sum G(a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("classify", help="hardness conditions for the matrix omega_q^h(i,j)")
    p.add_argument("q", type=int)
    p.add_argument("h", help="polynomial in x1, x2, or @file")
    p.add_argument("--symmetrize", action="store_true", help="use h(i,j) + h(j,i)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("matrix-test", help="run one condition on a matrix JSON file")
    p.add_argument("file")
    p.add_argument("test", choices=["unitary", "ortho", "group", "ggc", "rank1"])
    p.set_defaults(func=cmd_matrix_test)

    p = sub.add_parser("gadget", help="emit a gadget multigraph")
    p.add_argument("kind", choices=["hp", "star"])
    p.add_argument("params", type=_positive_int, nargs="+")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("bp", help="the matrix B^[p] of an exponent matrix")
    p.add_argument("file")
    p.add_argument("p", type=_positive_int)
    p.set_defaults(func=cmd_bp)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"expsum: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"expsum: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DegreeError, dichotomy.PreconditionError, ValueError) as exc:
        print(f"expsum: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
