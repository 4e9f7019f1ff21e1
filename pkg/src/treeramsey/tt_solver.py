"""The TT(n) pipeline: reduce the exponent ``n - 1`` times, then solve TT(1).

Each reduction stage works on the previous stage's output truncated by one
level, since the reduced coloring only covers chains ending at internal
nodes.  The final witness is pulled back through every stage embedding.
"""
from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .coloring import ChainColoring
from .errors import CapExceeded, DepthExhausted
from .reduction import DEFAULT_WINDOW, ReductionLedger, reduce_step
from .tree_core import (
    Embedding,
    comparable,
    compose_embeddings,
    enumerate_chains,
    full_nodes,
    node_key,
)


def stage_depths(n: int, d: int, slack: int = 0) -> list[int]:
    """Output depth requested by each of the ``n - 1`` reduction stages.

    Worked backwards from the base case, which gets a tree of depth
    ``d + slack``.  A stage's output loses one level to truncation, and a
    stage building depth ``e`` needs at least ``2 * e`` input levels (a
    witness and a successor per output level).  For ``n = 2`` and no slack
    this is the single stage ``d + 1``.
    """
    out = []
    need = d + slack
    for _ in range(n - 1):
        out.append(need + 1)
        need = 2 * (need + 1)
    return out[::-1]


@dataclass
class SolveResult:
    color: int
    witness: Embedding
    ledgers: list = field(default_factory=list)
    stages: list = field(default_factory=list)

    @property
    def jump_levels(self) -> int:
        return sum(ledger.jump_levels for ledger in self.ledgers)

    def to_json(self) -> dict:
        return {
            "color": self.color,
            "witness": self.witness.to_json(),
            "ledger": {
                "steps": [ledger.to_json() for ledger in self.ledgers],
                "jump-levels": self.jump_levels,
            },
            "stages": [e.to_json() for e in self.stages],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SolveResult":
        ledgers = [ReductionLedger.from_json(x) for x in obj["ledger"]["steps"]]
        return cls(int(obj["color"]), Embedding.from_json(obj["witness"]), ledgers,
                   [Embedding.from_json(e) for e in obj["stages"]])


def _local_colors(S: Embedding, f: ChainColoring) -> dict:
    return {x: f.color((S.images[x],)) for x in full_nodes(S.depth)}


def _monochromatic_tree(colors: dict, depth: int, color: int, d: int) -> Optional[dict]:
    """Canonical depth-``d`` subtree of 2^{<=depth} with every node ``color``.

    ``fits[r]`` holds the nodes that can root a depth-``r`` solution.  While
    building it, ``below[x]`` says some node extending ``x`` (or ``x``) is in
    ``fits[r-1]`` and ``pair[x]`` says two incomparable ones are.
    """
    nodes = full_nodes(depth)
    bottom_up = sorted(nodes, key=len, reverse=True)
    fits = {0: {x for x in nodes if colors[x] == color}}
    for r in range(1, d + 1):
        below, pair = {}, {}
        for x in bottom_up:
            below[x] = x in fits[r - 1]
            pair[x] = False
            if len(x) < depth:
                a, b = x + "0", x + "1"
                split = below[a] and below[b]
                below[x] = below[x] or below[a] or below[b]
                pair[x] = pair[a] or pair[b] or split
        fits[r] = {x for x in fits[0] if len(x) < depth and
                   (pair[x + "0"] or pair[x + "1"] or (below[x + "0"] and below[x + "1"]))}
    if not fits[d]:
        return None

    images = {}

    def place(index, node, r):
        images[index] = node
        if r == 0:
            return
        ups = sorted((y for y in fits[r - 1] if len(y) > len(node) and y.startswith(node)),
                     key=node_key)
        for i, left in enumerate(ups):
            for right in ups[i + 1:]:
                if not comparable(left, right):
                    place(index + "0", left, r - 1)
                    place(index + "1", right, r - 1)
                    return
        raise AssertionError("feasibility table out of sync")  # pragma: no cover

    place("", min(fits[d], key=node_key), d)
    return images


def tt1_solve(S: Embedding, f: ChainColoring, d: int):
    """Monochromatic depth-``d`` sub-embedding of ``S`` for a node coloring.

    Colors are tried by descending frequency in ``S`` (ties: smaller color
    first).  Raises :class:`DepthExhausted` when no color works.
    """
    if f.n != 1:
        raise ValueError("tt1_solve needs a coloring of single nodes")
    colors = _local_colors(S, f)
    if d == 0:
        return colors[""], compose_embeddings(S, Embedding(0, {"": ""}))
    counts = Counter(colors.values())
    for color in sorted(counts, key=lambda c: (-counts[c], c)):
        images = _monochromatic_tree(colors, S.depth, color, d)
        if images is not None:
            return color, compose_embeddings(S, Embedding(d, images))
    raise DepthExhausted(f"no monochromatic depth-{d} subtree inside depth-{S.depth} tree",
                         stage="base")


def tt_solve(f: ChainColoring, D: int, d: int,
             depths: Optional[list] = None, slack: int = 0,
             window: Optional[int] = DEFAULT_WINDOW) -> SolveResult:
    """Monochromatic depth-``d`` subtree of the depth-``D`` tree for ``f``.

    ``depths`` overrides ``stage_depths(f.n, d, slack)`` for the reduction
    stages.
    """
    if f.n < 1:
        raise ValueError("arity must be at least 1")
    if D > f.depth:
        raise ValueError(f"coloring covers depth {f.depth}, asked for {D}")
    depths = stage_depths(f.n, d, slack) if depths is None else list(depths)
    if len(depths) != f.n - 1:
        raise ValueError(f"need {f.n - 1} stage depths, got {len(depths)}")

    R = Embedding.identity(D)
    current = f
    ledgers, stages = [], []
    for i, di in enumerate(depths, start=1):
        inverse = R.inverse()
        try:
            S, g, ledger = reduce_step(R, current, di, window=window)
        except DepthExhausted as exc:
            raise DepthExhausted(f"stage {i}: {exc}", stage=i,
                                 ledger=ledgers + [exc.ledger]) from exc
        ledgers.append(ledger)
        S = S.truncate(di - 1)
        stages.append(Embedding(S.depth, {s: inverse[h] for s, h in S.images.items()}))
        R, current = S, g
    try:
        color, witness = tt1_solve(R, current, d)
    except DepthExhausted as exc:
        raise DepthExhausted(f"base case: {exc}", stage="base", ledger=ledgers) from exc
    base = Embedding(d, {s: R.inverse()[h] for s, h in witness.images.items()})
    stages.append(base)
    return SolveResult(color, witness, ledgers, stages)


def pull_back(stages: list) -> Embedding:
    """Compose stage embeddings, outermost first."""
    out = stages[0]
    for e in stages[1:]:
        out = compose_embeddings(out, e)
    return out


def verify_monochromatic(w: Embedding, f: ChainColoring, color: int) -> bool:
    try:
        return all(f.color(c) == color for c in enumerate_chains(w, f.n))
    except (KeyError, ValueError):
        return False


@functools.lru_cache(maxsize=None)
def count_embeddings(D: int, d: int) -> int:
    """Number of order-isomorphic copies of 2^{<=d} in 2^{<=D}, counted with
    children in canonical order."""
    nodes = full_nodes(D)
    count = {x: 1 for x in nodes}  # depth-0 copies rooted at x
    for _ in range(d):
        new = {}
        for x in nodes:
            ups = [y for y in nodes if len(y) > len(x) and y.startswith(x)]
            total = 0
            for a, b in itertools.combinations(ups, 2):
                if not comparable(a, b):
                    total += count[a] * count[b]
            new[x] = total
        count = new
    return sum(count.values())


@functools.lru_cache(maxsize=8)
def _embedding_list(D: int, d: int) -> tuple:
    return tuple(_all_embeddings(D, d))


def _all_embeddings(D: int, d: int):
    nodes = full_nodes(D)
    ups = {x: sorted((y for y in nodes if len(y) > len(x) and y.startswith(x)), key=node_key)
           for x in nodes}

    def grow(index, node, r):
        if r == 0:
            yield {index: node}
            return
        for a, b in itertools.combinations(ups[node], 2):
            if comparable(a, b):
                continue
            for left in grow(index + "0", a, r - 1):
                for right in grow(index + "1", b, r - 1):
                    yield {index: node, **left, **right}

    for root in nodes:
        yield from grow("", root, d)


def brute_force_tt(f: ChainColoring, D: int, d: int, cap: int = 200_000):
    """Canonically least monochromatic depth-``d`` embedding, by exhaustion."""
    total = count_embeddings(D, d)
    if total > cap:
        raise CapExceeded(f"{total} candidate embeddings exceed cap {cap}")
    index = full_nodes(d)
    best = None
    for images in _embedding_list(D, d):
        w = Embedding(d, images)
        chains = enumerate_chains(w, f.n)
        if not chains:
            continue
        colors = {f.color(c) for c in chains}
        if len(colors) != 1:
            continue
        key = tuple(node_key(images[s]) for s in index)
        if best is None or key < best[0]:
            best = (key, colors.pop(), w)
    return None if best is None else (best[1], best[2])
