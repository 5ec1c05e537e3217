"""Command-line front end.

Exit codes: 0 verified / success, 1 falsified (a check came out false),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .characterization import (
    MAX_SEARCH_DIM,
    conjugacy_orbit,
    decompose_t0_triple,
    exhaustive_search_t0,
    pj_identities_check,
)
from .cud import RecurrenceSpec, overlapping_tuples, recurrence_orbit
from .errors import GF2Error, MatrixParseError, NotT0Error
from .gf2 import MAX_DIM, BitMatrix, BitVector, antidiag_j, identity, multiply, pascal_p
from .io import parse_matrix, points_to_csv, points_to_text
from .net import NetSpec, generate_points, t_value_geometric, t_value_rank

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2

BUILTINS = {"I": identity, "J": antidiag_j, "P": pascal_p}


class UsageError(Exception):
    pass


def resolve_matrix(token: str, m: int | None) -> BitMatrix:
    """Turn a command-line matrix argument into a matrix.

    Accepts builtin names ``I``, ``J``, ``P`` (or a product such as ``PJ``)
    expanded at dimension ``m``, a path to a file with one row per line, or
    a compact literal like ``01,11``.
    """
    if token and all(ch in BUILTINS for ch in token):
        if m is None:
            raise UsageError(f"builtin {token!r} needs -m")
        out = BUILTINS[token[0]](m)
        for ch in token[1:]:
            out = multiply(out, BUILTINS[ch](m))
        return out
    if os.path.isfile(token):
        with open(token) as fh:
            text = fh.read()
        try:
            return parse_matrix(text, m)
        except MatrixParseError as exc:
            raise MatrixParseError(f"{token}: {exc}", exc.line, exc.column) from None
    return parse_matrix(token, m)


def resolve_all(tokens: list[str], m: int | None) -> list[BitMatrix]:
    if m is None:
        for tok in tokens:
            if not all(ch in BUILTINS for ch in tok):
                m = resolve_matrix(tok, None).m
                break
    mats = [resolve_matrix(tok, m) for tok in tokens]
    if len({a.m for a in mats}) > 1:
        raise UsageError("matrices have different dimensions")
    return mats


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_tvalue(args) -> int:
    mats = resolve_all(args.matrices, args.m)
    spec = NetSpec.of(*mats)
    res = t_value_rank(spec)
    out = res.to_dict()
    code = EXIT_OK
    if args.geometric:
        g = t_value_geometric(generate_points(spec))
        out["geometric_t"] = g
        if g != res.t:
            code = EXIT_FALSIFIED
    if args.format == "text":
        line = f"t = {res.t}"
        if res.witness is not None:
            line += f"  witness {tuple(res.witness)}"
        if args.geometric:
            line += f"  geometric t = {out['geometric_t']}"
        _emit(args, line)
    else:
        _emit(args, json.dumps(out))
    return code


def cmd_verify_theorem(args) -> int:
    if args.m is None:
        raise UsageError("verify-theorem needs -m")
    if not 1 <= args.m <= MAX_SEARCH_DIM:
        raise UsageError(f"verify-theorem supports 1 <= m <= {MAX_SEARCH_DIM}")
    report = exhaustive_search_t0(args.m, workers=args.workers)
    if args.format == "text":
        d = report.to_dict()
        lines = [f"m = {report.m}"]
        for key in ("candidates_scanned", "filter_pass", "equal_sets", "all_cubes_identity", "elapsed_ms"):
            lines.append(f"{key} = {d[key]}")
        lines.append(f"found = {len(report.found)}")
        lines.append(f"primitive_members = {d['primitive_members']}")
        _emit(args, "\n".join(lines))
    else:
        _emit(args, report.to_json())
    return EXIT_OK if report.verified else EXIT_FALSIFIED


def cmd_points(args) -> int:
    mats = resolve_all(args.matrices, args.m)
    ps = generate_points(NetSpec.of(*mats))
    if args.format == "csv":
        _emit(args, points_to_csv(ps.points, ps.m))
    elif args.format == "json":
        _emit(args, json.dumps({"m": ps.m, "s": ps.s, "points": [list(p) for p in ps.points]}))
    else:
        _emit(args, points_to_text(ps.points, ps.m))
    return EXIT_OK


def cmd_orbit(args) -> int:
    if args.m is None:
        raise UsageError("orbit needs -m")
    members = conjugacy_orbit(args.m)
    if args.format == "json":
        _emit(args, json.dumps({"m": args.m, "orbit": [a.compact() for a in members]}))
    else:
        _emit(args, "\n".join(a.compact() for a in members))
    return EXIT_OK


def cmd_decompose(args) -> int:
    (b,) = resolve_all([args.matrix], args.m)
    try:
        (l,) = decompose_t0_triple(b)
    except NotT0Error as exc:
        print(f"not decomposable: {exc}", file=sys.stderr)
        if args.format == "json":
            _emit(args, json.dumps({"b": b.compact(), "l": None, **exc.result.to_dict()}))
        return EXIT_FALSIFIED
    if args.format == "json":
        _emit(args, json.dumps({"b": b.compact(), "l": l.compact()}))
    else:
        _emit(args, f"L = {l.compact()}")
    return EXIT_OK


def _parse_seed(text: str | None, m: int) -> BitVector:
    if text is None:
        return BitVector.unit(m, 1)
    if len(text) != m or any(ch not in "01" for ch in text):
        raise UsageError(f"seed must be {m} characters from 0/1")
    return BitVector.from_entries([int(ch) for ch in text])


def cmd_sequence(args) -> int:
    (b,) = resolve_all([args.matrix], args.m)
    spec = RecurrenceSpec(b, _parse_seed(args.seed, b.m))
    ts = overlapping_tuples(spec, args.s)
    period = recurrence_orbit(spec).period
    if args.format == "json":
        _emit(args, json.dumps({"m": b.m, "s": args.s, "period": period, "tuples": [list(t) for t in ts.tuples]}))
    elif args.format == "csv":
        _emit(args, points_to_csv(ts.tuples, b.m))
    else:
        _emit(args, points_to_text(ts.tuples, b.m))
    return EXIT_OK


def cmd_identities(args) -> int:
    dims = [args.m] if args.m is not None else list(range(1, MAX_DIM + 1))
    results = {m: pj_identities_check(m) for m in dims}
    ok = all(results.values())
    if args.format == "json":
        _emit(args, json.dumps({"results": {str(m): v for m, v in results.items()}, "pass": ok}))
    else:
        _emit(args, "\n".join(f"m={m}: {'pass' if v else 'FAIL'}" for m, v in results.items()))
    return EXIT_OK if ok else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", type=int, help="matrix dimension (expands builtins I, J, P)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="gf2nets", description="Digital nets over F2 and t-value tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tvalue", parents=[common], help="exact t-value of a digital net")
    p.add_argument("matrices", nargs="+")
    p.add_argument("--geometric", action="store_true", help="cross-check by counting points in boxes")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_tvalue)

    p = sub.add_parser("verify-theorem", parents=[common], help="exhaustive search for t(I,B,B^2)=0")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("points", parents=[common], help="list the points of a digital net")
    p.add_argument("matrices", nargs="+")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("orbit", parents=[common], help="all L P J L^-1")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("decompose", parents=[common], help="find L with B = L P J L^-1")
    p.add_argument("matrix")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sequence", parents=[common], help="overlapping tuples of x_{i+1} = B x_i")
    p.add_argument("matrix")
    p.add_argument("-s", type=int, default=2, help="tuple width")
    p.add_argument("--seed", help="seed vector as 0/1 string, entry 1 first (default e_1)")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("identities", parents=[common], help="check P^2 = J^2 = (PJ)^3 = I")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_identities)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.m is not None and not 1 <= args.m <= MAX_DIM:
        print(f"error: -m must be in 1..{MAX_DIM}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except MatrixParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GF2Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
