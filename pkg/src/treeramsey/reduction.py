"""One exponent-reduction step.

Given an embedded tree ``R`` and a coloring ``f`` of its ``(n+1)``-chains,
build an embedded subtree ``S`` and a coloring ``g`` of ``n``-chains of ``S``
with ``g(ρ1..ρn) = f(ρ1..ρn, τ)`` for every ``τ ∈ S`` above ``ρn``.

Everything inside a step runs in R's index coordinates (``f`` is pulled back
through ``R``); ``S`` is reported in R's host coordinates.

Regions are trees given by a ``children`` function and a ``depth`` bound:
the full index tree at the first stage, then the standard subtrees built by
earlier stages.  Standard subtrees are sparse, so membership is never read
off prefixes; it is whatever ``children`` reaches from the stage root.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .coloring import (
    ChainColoring,
    FinsetCode,
    PullbackColoring,
    TableColoring,
    induced_value,
)
from .errors import DepthExhausted
from .tree_core import (
    Embedding,
    Node,
    TruncatedTree,
    compose_embeddings,
    comparable,
    descendants,
    full_nodes,
    node_key,
)

JUMPS_PER_STEP = 2
# witness roots are searched this many region levels above ρσ
DEFAULT_WINDOW = 1


class InducedValues:
    """Memoized ``τ ↦ induced_value(P, f, τ)`` for one stage."""

    def __init__(self, P: Sequence[Node], f: ChainColoring):
        self.P = tuple(P)
        self.f = f
        self._cache: dict = {}

    def __call__(self, tau: Node) -> FinsetCode:
        v = self._cache.get(tau)
        if v is None:
            v = self._cache[tau] = induced_value(self.P, self.f, tau)
        return v


def _values(P, f, value):
    return value if value is not None else InducedValues(P, f)


def select_color_and_root(region, rho_sigma: Node, P: Sequence[Node], f: ChainColoring,
                          headroom: int = 1, value: Optional[Callable] = None,
                          window: Optional[int] = None):
    """Pick the greatest induced value ``c`` that some witness ``ρ ⊋ ρσ`` bounds
    from below on all of its region extensions, and the least such ``ρ``.

    A witness must have at least one region extension and satisfy
    ``len(ρ) + headroom <= region.depth``; this keeps the "for all extensions"
    test from holding vacuously at the bottom of the truncation.
    """
    value = _values(P, f, value)
    level = {rho_sigma: 0}
    frontier = [rho_sigma]
    while frontier:
        nxt = []
        for x in frontier:
            for y in region.children(x):
                level[y] = level[x] + 1
                nxt.append(y)
        frontier = nxt
    above = [x for x in level if x != rho_sigma]
    if not above:
        raise DepthExhausted(f"no region node above {rho_sigma!r}", stage=rho_sigma)

    # least induced value over the proper region extensions of each node
    floor: dict = {}
    for x in sorted(above, key=len, reverse=True):
        best = None
        for y in region.children(x):
            cand = value(y)
            if y in floor and floor[y] < cand:
                cand = floor[y]
            if best is None or cand < best:
                best = cand
        if best is not None:
            floor[x] = best

    admissible = [x for x in floor if len(x) + headroom <= region.depth
                  and (window is None or level[x] <= window)]
    if not admissible:
        raise DepthExhausted(
            f"no witness above {rho_sigma!r} with headroom {headroom}", stage=rho_sigma)
    c = max(floor[x] for x in admissible)
    rho = min((x for x in admissible if not floor[x] < c), key=node_key)
    return c, rho


def standard_subtree_successors(region, parent: Node, c: FinsetCode, P: Sequence[Node],
                                f: ChainColoring, value: Optional[Callable] = None):
    """Least pair of incomparable proper region extensions of ``parent`` whose
    induced value is exactly ``c``."""
    value = _values(P, f, value)
    hits = sorted((x for x in descendants(region, parent, include_self=False)
                   if value(x) == c), key=node_key)
    for i, left in enumerate(hits):
        for right in hits[i + 1:]:
            if not comparable(left, right):
                return left, right
    raise DepthExhausted(
        f"fewer than two incomparable extensions of {parent!r} with value {c}", stage=parent)


class StandardSubtree:
    """The standard ``c``-colored subtree of ``region`` rooted at ``root``.

    Nodes whose successor pair does not fit inside the truncation are leaves.
    """

    def __init__(self, region, root: Node, c: FinsetCode, value: Callable):
        self.region = region
        self.root = root
        self.c = c
        self.value = value
        self.depth = region.depth
        self._kids: dict = {}

    def successors(self, x: Node):
        """Like :meth:`children` but raising when ``x`` has no successor pair."""
        kids = self.children(x)
        if not kids:
            raise DepthExhausted(
                f"standard subtree has no successors above {x!r}", stage=x)
        return kids

    def children(self, x: Node) -> list:
        kids = self._kids.get(x)
        if kids is None:
            try:
                kids = list(standard_subtree_successors(
                    self.region, x, self.c, (), None, value=self.value))
            except DepthExhausted:
                kids = []
            self._kids[x] = kids
        return kids


@dataclass
class StageChoice:
    """One Σ2-class selection: ``c_σ`` and the witness root above ``ρ_σ``.

    Nodes are in host coordinates; ``color`` is a :class:`FinsetCode` over
    host chains, or its canonical string when loaded from JSON.
    """

    sigma: Node
    rho_sigma: Node
    color: object
    witness_root: Node
    klass: str = "Sigma2"

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "rho": self.rho_sigma,
            "color-code": str(self.color),
            "witness-root": self.witness_root,
            "class": self.klass,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StageChoice":
        return cls(obj["sigma"], obj["rho"], obj["color-code"], obj["witness-root"], obj["class"])


@dataclass
class ReductionLedger:
    entries: list = field(default_factory=list)
    jump_levels: int = JUMPS_PER_STEP

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries], "jump-levels": self.jump_levels}

    @classmethod
    def from_json(cls, obj: dict) -> "ReductionLedger":
        return cls([StageChoice.from_json(e) for e in obj["entries"]], int(obj["jump-levels"]))


@dataclass
class Reduction:
    embedding: Embedding
    coloring: TableColoring
    ledger: ReductionLedger

    def __iter__(self):
        return iter((self.embedding, self.coloring, self.ledger))


def reduce_step(R: Embedding, f: ChainColoring, d: int,
                window: Optional[int] = DEFAULT_WINDOW, headroom: int = 1) -> Reduction:
    """Build ``S`` (depth ``d``, inside R's image) and ``g`` from ``f``.

    ``g`` covers the ``n``-chains of ``S`` whose top node is internal, i.e.
    exactly the chains of ``S`` truncated to depth ``d - 1``.
    """
    if f.n < 2:
        raise ValueError("reduce_step needs a coloring of arity at least 2")
    if d < 0:
        raise ValueError("target depth must be non-negative")
    n = f.n - 1
    pulled = f if _is_identity(R) else PullbackColoring(f, R)

    ledger = ReductionLedger()
    rho = {"": ""}
    region_of = {"": TruncatedTree(R.depth)}
    ancestors = {"": ("",)}

    for sigma in (full_nodes(d - 1) if d >= 1 else []):
        region, P = region_of[sigma], ancestors[sigma]
        value = InducedValues(P, pulled)
        try:
            c, root = select_color_and_root(region, rho[sigma], P, pulled, headroom=headroom,
                                            value=value, window=window)
            tree = StandardSubtree(region, root, c, value)
            left, right = tree.successors(root)
        except DepthExhausted as exc:
            raise DepthExhausted(f"stage {sigma!r}: {exc}", stage=sigma, ledger=ledger) from exc
        ledger.entries.append(StageChoice(
            sigma, R.images[rho[sigma]], c if pulled is f else c.relabel(R.images),
            R.images[root]))
        for eps, node in (("0", left), ("1", right)):
            rho[sigma + eps] = node
            region_of[sigma + eps] = tree
            ancestors[sigma + eps] = P + (node,)

    local = Embedding(d, rho)
    S = compose_embeddings(R, local)
    entries = {}
    if d >= 1:
        for idx in _index_chains(d - 1, n):
            nodes = tuple(S.images[s] for s in idx)
            entries[nodes] = f.color(nodes + (S.images[idx[-1] + "0"],))
    g = TableColoring(n, f.k, f.depth, entries)
    return Reduction(S, g, ledger)


def _is_identity(R: Embedding) -> bool:
    return all(k == v for k, v in R.images.items())


def _index_chains(depth: int, n: int):
    for top in full_nodes(depth):
        for rest in itertools.combinations([top[:i] for i in range(len(top))], n - 1):
            yield rest + (top,)
