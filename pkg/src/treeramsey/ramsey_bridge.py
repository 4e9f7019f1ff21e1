"""Classical Ramsey through the tree version.

A coloring ``f`` of increasing integer ``n``-tuples is lifted to chains by
node lengths; a monochromatic subtree's leftmost path then has node lengths
forming a homogeneous set for ``f``.
"""
from __future__ import annotations

import itertools
import math
from typing import Mapping, Optional, Sequence

from .coloring import MASK64, ColoringError, LengthProfileColoring, fold_codes
from .errors import CapExceeded
from .tree_core import Embedding
from .tt_solver import DEFAULT_WINDOW, tt_solve


class IntTupleColoring:
    """Coloring of strictly increasing ``n``-tuples from ``range(domain)``.

    Backed by an explicit ``table`` or a 64-bit ``seed`` (same ``mix64``
    fold as chain colorings, with each integer as its own code).
    """

    def __init__(self, n: int, k: int, domain: int, table: Optional[Mapping] = None,
                 seed: Optional[int] = None):
        if n < 1 or k < 1 or domain < 0:
            raise ValueError(f"bad tuple coloring n={n} k={k} domain={domain}")
        if (table is None) == (seed is None):
            raise ValueError("give exactly one of table or seed")
        self.n, self.k, self.domain = n, k, domain
        self.seed = seed
        self.table = None
        if table is not None:
            self.table = {}
            for key, c in table.items():
                key = tuple(int(i) for i in key)
                if len(key) != n or list(key) != sorted(set(key)):
                    raise ValueError(f"table key {key} is not an increasing {n}-tuple")
                if not 0 <= c < k:
                    raise ValueError(f"color {c} outside range({k})")
                self.table[key] = int(c)
        elif not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def __call__(self, tup: Sequence[int]) -> int:
        tup = tuple(tup)
        if len(tup) != self.n or any(not 0 <= i < self.domain for i in tup):
            raise ColoringError(f"{tup} outside the domain of this coloring")
        if self.table is not None:
            try:
                return self.table[tup]
            except KeyError:
                raise ColoringError(f"{tup} not in table") from None
        return fold_codes(self.seed, tup) % self.k

    @classmethod
    def from_function(cls, n: int, k: int, domain: int, fn) -> "IntTupleColoring":
        table = {t: fn(*t) for t in itertools.combinations(range(domain), n)}
        return cls(n, k, domain, table=table)

    def to_json(self) -> dict:
        if self.table is not None:
            entries = [[list(t), c] for t, c in sorted(self.table.items())]
            source = {"kind": "table", "entries": entries}
        else:
            source = {"kind": "seeded", "seed": self.seed}
        return {"n": self.n, "k": self.k, "domain": self.domain, "source": source}

    @classmethod
    def from_json(cls, obj: dict) -> "IntTupleColoring":
        n, k, domain = int(obj["n"]), int(obj["k"]), int(obj["domain"])
        src = obj["source"]
        if src["kind"] == "table":
            return cls(n, k, domain, table={tuple(t): c for t, c in src["entries"]})
        if src["kind"] == "seeded":
            return cls(n, k, domain, seed=int(src["seed"]))
        raise ValueError(f"unknown tuple coloring source {src['kind']!r}")


def lift_length_coloring(f: IntTupleColoring, depth: int) -> LengthProfileColoring:
    return LengthProfileColoring(f, depth)


def extract_homogeneous_set(w: Embedding, m: int) -> list[int]:
    """Lengths of the first ``m`` nodes on the leftmost path of ``w``."""
    if m < 0 or w.depth < m - 1:
        raise ValueError(f"witness depth {w.depth} too small for a set of size {m}")
    return [len(x) for x in w.leftmost_path()[:m]]


def is_homogeneous(f: IntTupleColoring, subset: Sequence[int], color: int) -> bool:
    return all(f(t) == color for t in itertools.combinations(sorted(subset), f.n))


def rt_solve(f: IntTupleColoring, m: int, D: int, slack: int = 0,
             window: Optional[int] = DEFAULT_WINDOW):
    """Homogeneous ``m``-set for ``f`` via a monochromatic depth ``m-1`` subtree
    of the depth-``D`` tree under the lifted coloring."""
    if m < f.n:
        raise ValueError(f"homogeneous size {m} below arity {f.n}")
    g = lift_length_coloring(f, D)
    result = tt_solve(g, D, m - 1, slack=slack, window=window)
    subset = extract_homogeneous_set(result.witness, m)
    if not is_homogeneous(f, subset, result.color):
        raise AssertionError("extracted set is not homogeneous")  # pragma: no cover
    return result.color, subset


def brute_force_rt(f: IntTupleColoring, m: int, cap: int = 1_000_000):
    """Lexicographically least homogeneous ``m``-set, or ``None``."""
    total = math.comb(f.domain, m)
    if total > cap:
        raise CapExceeded(f"C({f.domain}, {m}) = {total} exceeds cap {cap}")
    for subset in itertools.combinations(range(f.domain), m):
        colors = {f(t) for t in itertools.combinations(subset, f.n)}
        if len(colors) == 1:
            return colors.pop(), list(subset)
    return None
