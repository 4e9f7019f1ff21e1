"""Command-line entry point.

Exit codes: 0 success, 1 bad input, 2 the solver or checker came up empty
(depth exhausted, no homogeneous set, failed verification).
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys

from .coloring import (
    ColoringError,
    ConstantColoring,
    SeededColoring,
    TableColoring,
    coloring_from_json,
)
from .errors import CapExceeded, DepthExhausted
from .jump_lab import OracleApprox, iter_jump_stage
from .ramsey_bridge import IntTupleColoring, brute_force_rt, rt_solve
from .reduction import DEFAULT_WINDOW, reduce_step
from .tree_core import Embedding, enumerate_chains, TruncatedTree, verify_embedding
from .tt_solver import SolveResult, brute_force_tt, tt_solve

EXIT_OK, EXIT_INPUT, EXIT_EMPTY = 0, 1, 2


class InputError(Exception):
    pass


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(obj, out):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _chain_coloring(path):
    try:
        return coloring_from_json(_load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad coloring file {path}: {exc}") from exc


def cmd_gen_coloring(args):
    rng = random.Random(args.seed)
    if args.kind == "seeded":
        f = SeededColoring(args.n, args.k, args.depth, args.seed)
    elif args.kind == "constant":
        f = ConstantColoring(args.n, args.k, args.depth, args.color)
    elif args.kind == "table":
        chains = enumerate_chains(TruncatedTree(args.depth), args.n)
        f = TableColoring(args.n, args.k, args.depth, {c: rng.randrange(args.k) for c in chains})
    elif args.kind == "tuple-seeded":
        f = IntTupleColoring(args.n, args.k, args.domain, seed=args.seed)
    else:
        tuples = itertools.combinations(range(args.domain), args.n)
        f = IntTupleColoring(args.n, args.k, args.domain,
                             table={t: rng.randrange(args.k) for t in tuples})
    _emit(f.to_json(), args.out)
    return EXIT_OK


def cmd_tt_solve(args):
    f = _chain_coloring(args.coloring)
    D = f.depth if args.depth is None else args.depth
    if args.method == "brute":
        found = brute_force_tt(f, D, args.target_depth, cap=args.cap)
        if found is None:
            print("no monochromatic embedding exists", file=sys.stderr)
            return EXIT_EMPTY
        result = SolveResult(found[0], found[1])
    else:
        try:
            result = tt_solve(f, D, args.target_depth, window=args.window)
        except DepthExhausted as exc:
            print(f"depth exhausted at {exc.stage}: {exc}", file=sys.stderr)
            return EXIT_EMPTY
    doc = result.to_json()
    if args.ledger:
        _emit(doc["ledger"], args.ledger)
    _emit(doc, args.out)
    return EXIT_OK


def cmd_rt_solve(args):
    try:
        f = IntTupleColoring.from_json(_load(args.coloring))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad tuple coloring {args.coloring}: {exc}") from exc
    if args.method == "brute":
        found = brute_force_rt(f, args.size, cap=args.cap)
        if found is None:
            print("no homogeneous set exists", file=sys.stderr)
            return EXIT_EMPTY
        color, subset = found
    else:
        D = f.domain - 1 if args.depth is None else args.depth
        try:
            color, subset = rt_solve(f, args.size, D, window=args.window)
        except DepthExhausted as exc:
            print(f"depth exhausted at {exc.stage}: {exc}", file=sys.stderr)
            return EXIT_EMPTY
    _emit({"color": color, "set": subset}, args.out)
    return EXIT_OK


def cmd_reduce_step(args):
    f = _chain_coloring(args.coloring)
    D = f.depth if args.depth is None else args.depth
    try:
        S, g, ledger = reduce_step(Embedding.identity(D), f, args.target_depth,
                                   window=args.window)
    except DepthExhausted as exc:
        print(f"depth exhausted at {exc.stage!r}: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    if args.ledger:
        _emit(ledger.to_json(), args.ledger)
    _emit({"embedding": S.to_json(), "coloring": g.to_json(), "ledger": ledger.to_json()},
          args.out)
    return EXIT_OK


def cmd_verify(args):
    f = _chain_coloring(args.coloring)
    doc = _load(args.embedding)
    color = args.color
    try:
        if "witness" in doc:
            w = Embedding.from_json(doc["witness"])
            color = doc["color"] if color is None else color
        else:
            w = Embedding.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad embedding file {args.embedding}: {exc}") from exc

    valid = verify_embedding(w, TruncatedTree(f.depth))
    violations, colors, chains = [], set(), []
    if valid:
        chains = enumerate_chains(w, f.n)
        for c in chains:
            try:
                v = f.color(c)
            except ColoringError as exc:
                raise InputError(str(exc)) from exc
            colors.add(v)
            if color is not None and v != color:
                violations.append([list(c), v])
    mono = valid and (len(colors) <= 1 if color is None else not violations)
    if color is None and len(colors) == 1:
        color = next(iter(colors))
    _emit({
        "embedding-valid": valid,
        "monochromatic": mono,
        "color": color,
        "chains": len(chains),
        "violations": violations[:20],
    }, args.out)
    return EXIT_OK if valid and mono else EXIT_EMPTY


def cmd_jump_approx(args):
    horizon = args.stage if args.horizon is None else args.horizon
    try:
        base = OracleApprox.named(args.base, horizon)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(iter_jump_stage(base, args.level, args.stage).to_json(), args.out)
    return EXIT_OK


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="treeramsey", description=__doc__.splitlines()[0])
    groups = p.add_subparsers(dest="group", required=True)

    actions = {}

    def sub(group, name, func, help):
        if group not in actions:
            actions[group] = groups.add_parser(group).add_subparsers(dest="action", required=True)
        s = actions[group].add_parser(name, help=help)
        s.set_defaults(func=func)
        s.add_argument("--out", help="write JSON here instead of stdout")
        return s

    s = sub("gen", "coloring", cmd_gen_coloring, "write a coloring file")
    s.add_argument("--kind", default="seeded",
                   choices=["seeded", "constant", "table", "tuple-seeded", "tuple-table"])
    s.add_argument("--n", type=_positive, default=2)
    s.add_argument("--k", type=_positive, default=2)
    s.add_argument("--depth", type=_nonneg, default=10)
    s.add_argument("--domain", type=_nonneg, default=6)
    s.add_argument("--seed", type=_nonneg, default=0)
    s.add_argument("--color", type=_nonneg, default=0)

    for name, func in (("tt", cmd_tt_solve), ("rt", cmd_rt_solve)):
        s = sub(name, "solve", func, f"solve {name.upper()}(n) for a coloring file")
        s.add_argument("--coloring", required=True)
        s.add_argument("--depth", type=_nonneg)
        s.add_argument("--window", type=_positive, default=DEFAULT_WINDOW)
        s.add_argument("--method", choices=["construct", "brute"], default="construct",
                       help="staged construction, or exhaustive search bounded by --cap")
        s.add_argument("--cap", type=_positive, default=1_000_000)
        if name == "tt":
            s.add_argument("--target-depth", type=_nonneg, required=True)
            s.add_argument("--ledger", help="also write the ledger here")
        else:
            s.add_argument("--size", type=_positive, required=True)

    s = sub("reduce", "step", cmd_reduce_step, "one exponent-reduction step")
    s.add_argument("--coloring", required=True)
    s.add_argument("--depth", type=_nonneg)
    s.add_argument("--target-depth", type=_nonneg, required=True)
    s.add_argument("--window", type=_positive, default=DEFAULT_WINDOW)
    s.add_argument("--ledger")

    s = sub("jump", "approx", cmd_jump_approx, "stage approximation of an iterated jump")
    s.add_argument("--base", default="empty", help="empty, even, full or list:1,2,3")
    s.add_argument("--horizon", type=_nonneg)
    s.add_argument("--level", type=_nonneg, default=1)
    s.add_argument("--stage", type=_nonneg, required=True)

    v = groups.add_parser("verify", help="check an embedding against a coloring")
    v.set_defaults(func=cmd_verify)
    v.add_argument("--embedding", required=True, help="embedding or solve-result JSON")
    v.add_argument("--coloring", required=True)
    v.add_argument("--color", type=_nonneg)
    v.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ColoringError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
