"""Colorings of chains and the induced single-node coloring.

Three backends share :class:`ChainColoring`:

* :class:`TableColoring` -- explicit map from chains to colors,
* :class:`SeededColoring` -- ``mix64`` hash of the chain, reduced mod ``k``,
* :class:`LengthProfileColoring` -- a coloring of integer tuples applied to
  the lengths of the chain's nodes.

The induced value of a node is a :class:`FinsetCode`: a sorted tuple of
``(chain, color)`` pairs with a strict total order standing in for integer
magnitude.
"""
from __future__ import annotations

import functools
import itertools
from typing import Iterable, Mapping, Sequence

from .tree_core import Chain, Node, chain_key, check_node, is_chain, is_proper_prefix

MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """The split-mix 64-bit finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def fold_codes(seed: int, codes: Iterable[int]) -> int:
    h = seed & MASK64
    for c in codes:
        h = mix64(h ^ (c & MASK64))
    return h


def node_code(node: Node) -> int:
    # leading 1 keeps nodes of different lengths apart
    return int("1" + node, 2)


class ColoringError(ValueError):
    """Evaluation on a tuple outside the coloring's domain."""


class ChainColoring:
    """Base class: a coloring of the ``n``-chains of the depth-``depth`` tree."""

    kind = ""

    def __init__(self, n: int, k: int, depth: int):
        if n < 1 or k < 1 or depth < 0:
            raise ValueError(f"bad coloring parameters n={n} k={k} depth={depth}")
        self.n = n
        self.k = k
        self.depth = depth

    def __call__(self, chain: Sequence[Node]) -> int:
        return self.color(tuple(chain))

    def color(self, chain: Chain) -> int:
        if len(chain) != self.n:
            raise ColoringError(f"expected a {self.n}-chain, got {len(chain)} nodes")
        if chain and len(chain[-1]) > self.depth:
            raise ColoringError(f"node {chain[-1]!r} beyond depth {self.depth}")
        return self._color(chain)

    def _color(self, chain: Chain) -> int:
        raise NotImplementedError

    def source_json(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "depth": self.depth, "source": self.source_json()}


class TableColoring(ChainColoring):
    kind = "table"

    def __init__(self, n: int, k: int, depth: int, entries: Mapping[Chain, int]):
        super().__init__(n, k, depth)
        table = {}
        for chain, c in entries.items():
            chain = tuple(check_node(x) for x in chain)
            if len(chain) != n or not is_chain(chain):
                raise ValueError(f"table key {chain!r} is not an {n}-chain")
            if not 0 <= c < k:
                raise ValueError(f"color {c} outside range({k})")
            table[chain] = int(c)
        self.entries = table

    def _color(self, chain: Chain) -> int:
        try:
            return self.entries[chain]
        except KeyError:
            raise ColoringError(f"chain {chain!r} not in table") from None

    def source_json(self) -> dict:
        items = sorted(self.entries.items(), key=lambda kv: chain_key(kv[0]))
        return {"kind": "table", "entries": [[list(c), v] for c, v in items]}


class SeededColoring(ChainColoring):
    kind = "seeded"

    def __init__(self, n: int, k: int, depth: int, seed: int):
        super().__init__(n, k, depth)
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = seed

    def _color(self, chain: Chain) -> int:
        return fold_codes(self.seed, (node_code(x) for x in chain)) % self.k

    def source_json(self) -> dict:
        return {"kind": "seeded", "seed": self.seed}


class LengthProfileColoring(ChainColoring):
    """``g(σ1..σn) = f(lh σ1, .., lh σn)`` for an integer-tuple coloring ``f``."""

    kind = "length-profile"

    def __init__(self, tuples, depth: int):
        super().__init__(tuples.n, tuples.k, depth)
        if depth >= tuples.domain:
            raise ValueError(f"tree depth {depth} needs lengths outside domain {tuples.domain}")
        self.tuples = tuples

    def _color(self, chain: Chain) -> int:
        return self.tuples(tuple(len(x) for x in chain))

    def source_json(self) -> dict:
        return {"kind": "length-profile", "table-or-seed": self.tuples.to_json()}


class ConstantColoring(ChainColoring):
    kind = "constant"

    def __init__(self, n: int, k: int, depth: int, value: int):
        super().__init__(n, k, depth)
        if not 0 <= value < k:
            raise ValueError(f"color {value} outside range({k})")
        self.value = value

    def _color(self, chain: Chain) -> int:
        return self.value

    def source_json(self) -> dict:
        return {"kind": "constant", "color": self.value}


class PullbackColoring(ChainColoring):
    """``f`` read through an embedding: index chains are mapped to host chains."""

    kind = "pullback"

    def __init__(self, f: ChainColoring, embedding):
        super().__init__(f.n, f.k, embedding.depth)
        self.f = f
        self.images = embedding.images

    def _color(self, chain: Chain) -> int:
        return self.f.color(tuple(self.images[x] for x in chain))

    def source_json(self) -> dict:
        raise TypeError("pullback colorings are not serialized")


def eval_coloring(f: ChainColoring, chain: Sequence[Node]) -> int:
    return f(chain)


def coloring_from_json(obj: dict) -> ChainColoring:
    n, k, depth = int(obj["n"]), int(obj["k"]), int(obj["depth"])
    src = obj["source"]
    kind = src["kind"]
    if kind == "table":
        entries = {tuple(chain): int(c) for chain, c in src["entries"]}
        return TableColoring(n, k, depth, entries)
    if kind == "seeded":
        return SeededColoring(n, k, depth, int(src["seed"]))
    if kind == "constant":
        return ConstantColoring(n, k, depth, int(src["color"]))
    if kind == "length-profile":
        from .ramsey_bridge import IntTupleColoring

        tuples = IntTupleColoring.from_json(src["table-or-seed"])
        if (tuples.n, tuples.k) != (n, k):
            raise ValueError("length-profile arity/colors disagree with the wrapper")
        return LengthProfileColoring(tuples, depth)
    raise ValueError(f"unknown coloring source kind {kind!r}")


@functools.total_ordering
class FinsetCode:
    """Canonical code of a finite set of ``(chain, color)`` pairs.

    Shorter codes come first; equal-size codes compare lexicographically with
    pairs ordered by ``(chain_key, color)``.
    """

    __slots__ = ("pairs", "_key")

    def __init__(self, pairs: Iterable[tuple[Chain, int]] = ()):
        uniq = {(tuple(c), int(v)) for c, v in pairs}
        self.pairs = tuple(sorted(uniq, key=lambda p: (chain_key(p[0]), p[1])))
        self._key = (len(self.pairs), tuple((chain_key(c), v) for c, v in self.pairs))

    def __eq__(self, other):
        if not isinstance(other, FinsetCode):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other):
        if not isinstance(other, FinsetCode):
            return NotImplemented
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"FinsetCode({self})"

    def __str__(self):
        body = ";".join(f"<{','.join(c)}>{v}" for c, v in self.pairs)
        return "{" + body + "}"

    def as_set(self) -> frozenset:
        return frozenset(self.pairs)

    def relabel(self, images: Mapping[Node, Node]) -> "FinsetCode":
        return FinsetCode((tuple(images[x] for x in c), v) for c, v in self.pairs)


def code_less(a: FinsetCode, b: FinsetCode) -> bool:
    return a < b


def induced_value(P: Sequence[Node], f: ChainColoring, tau: Node) -> FinsetCode:
    """Code of ``{(m, f(m + (tau,))) : m an (f.n - 1)-subchain of P}``."""
    P = tuple(P)
    if P and not is_proper_prefix(P[-1], tau):
        raise ValueError(f"{tau!r} does not properly extend {P[-1]!r}")
    n = f.n - 1
    if n < 1:
        raise ValueError("induced values need a coloring of arity at least 2")
    return FinsetCode((m, f.color(m + (tau,))) for m in itertools.combinations(P, n))
