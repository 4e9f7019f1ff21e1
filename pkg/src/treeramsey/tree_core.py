"""Nodes of the binary tree, chains of comparable nodes, and embeddings.

A node is a plain ``str`` over ``'0'``/``'1'``; the root is ``""``.  Every
"least" in the package refers to :func:`node_key`, i.e. shorter nodes first
and lexicographic order within a level.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

Node = str
Chain = tuple  # tuple[Node, ...], strictly increasing in prefix order


def node_key(node: Node) -> tuple[int, str]:
    return (len(node), node)


def chain_key(chain: Sequence[Node]) -> tuple:
    return tuple(node_key(x) for x in chain)


def is_prefix(a: Node, b: Node) -> bool:
    """``a ⊆ b``."""
    return b.startswith(a)


def is_proper_prefix(a: Node, b: Node) -> bool:
    return len(a) < len(b) and b.startswith(a)


def comparable(a: Node, b: Node) -> bool:
    return a.startswith(b) or b.startswith(a)


def check_node(node: Node) -> Node:
    if not isinstance(node, str) or node.strip("01"):
        raise ValueError(f"not a binary string: {node!r}")
    return node


def is_chain(nodes: Sequence[Node]) -> bool:
    return all(is_proper_prefix(a, b) for a, b in zip(nodes, nodes[1:]))


def full_nodes(depth: int) -> list[Node]:
    """All of 2^{<=depth} in canonical order."""
    out = []
    for length in range(depth + 1):
        out.extend("".join(bits) for bits in itertools.product("01", repeat=length))
    return out


class TruncatedTree:
    """The binary tree cut off at ``depth``, optionally thinned by ``member``.

    ``member`` must be closed under initial segments; it is only consulted for
    nodes of length at most ``depth``.
    """

    def __init__(self, depth: int, member: Optional[Callable[[Node], bool]] = None):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.depth = depth
        self._member = member

    def __contains__(self, node: Node) -> bool:
        if len(node) > self.depth:
            return False
        return self._member is None or self._member(node)

    @property
    def root(self) -> Node:
        return ""

    def children(self, node: Node) -> list[Node]:
        if len(node) >= self.depth:
            return []
        return [c for c in (node + "0", node + "1") if c in self]

    def nodes(self) -> list[Node]:
        if "" not in self:
            return []
        if self._member is None:
            return full_nodes(self.depth)
        return sorted(descendants(self, ""), key=node_key)

    def is_full(self) -> bool:
        return self._member is None


def descendants(tree, node: Node, include_self: bool = True) -> Iterator[Node]:
    """Walk ``tree`` upwards from ``node`` via ``tree.children`` (any order)."""
    stack = [node] if include_self else list(tree.children(node))
    while stack:
        x = stack.pop()
        yield x
        stack.extend(tree.children(x))


@dataclass(frozen=True, eq=True)
class Embedding:
    """An order-isomorphic copy of 2^{<=depth} inside some host tree.

    ``images`` maps each index node to its host node.  Construction does not
    check the isomorphism conditions; use :func:`verify_embedding`.
    """

    depth: int
    images: dict = field(hash=False)

    def __getitem__(self, index: Node) -> Node:
        return self.images[index]

    def __len__(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, depth: int) -> "Embedding":
        return cls(depth, {x: x for x in full_nodes(depth)})

    @classmethod
    def from_pairs(cls, depth: int, pairs: Iterable[tuple[Node, Node]]) -> "Embedding":
        return cls(depth, dict(pairs))

    def image(self) -> list[Node]:
        return sorted(self.images.values(), key=node_key)

    def root(self) -> Node:
        return self.images[""]

    def truncate(self, depth: int) -> "Embedding":
        if depth > self.depth:
            raise ValueError(f"cannot truncate depth {self.depth} embedding to {depth}")
        return Embedding(depth, {x: self.images[x] for x in full_nodes(depth)})

    def inverse(self) -> dict:
        return {v: k for k, v in self.images.items()}

    def leftmost_path(self) -> list[Node]:
        return [self.images["0" * i] for i in range(self.depth + 1)]

    def to_json(self) -> dict:
        out = {"depth": self.depth}
        out["images"] = {x: self.images[x] for x in full_nodes(self.depth) if x in self.images}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Embedding":
        depth = int(obj["depth"])
        images = obj.get("images")
        if images is None:
            images = {k: v for k, v in obj.items() if k != "depth"}
        for k, v in images.items():
            check_node(k)
            check_node(v)
        return cls(depth, dict(images))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


Host = Union[TruncatedTree, Embedding]


def _chains_in_full_order(nodes: list[Node], n: int, within: Optional[Node]) -> list[Chain]:
    # nodes: a prefix-closed set; a chain is a top node plus n-1 of its proper prefixes
    member = set(nodes)
    out = []
    for top in nodes:
        if within is not None and not top.startswith(within):
            continue
        lo = len(within) if within is not None else 0
        below = [top[:i] for i in range(lo, len(top)) if top[:i] in member]
        for rest in itertools.combinations(below, n - 1):
            out.append(rest + (top,))
    out.sort(key=chain_key)
    return out


def enumerate_chains(host: Host, n: int, within: Optional[Node] = None) -> list[Chain]:
    """All strictly increasing ``n``-tuples of comparable nodes of ``host``.

    For an :class:`Embedding` the chains live in its image (host coordinates).
    ``within`` keeps only chains whose nodes all extend that node.
    """
    if n < 1:
        raise ValueError("chain arity must be at least 1")
    if isinstance(host, Embedding):
        index_chains = _chains_in_full_order(full_nodes(host.depth), n, None)
        out = []
        for c in index_chains:
            img = tuple(host.images[x] for x in c)
            if within is None or img[0].startswith(within):
                out.append(img)
        out.sort(key=chain_key)
        return out
    return _chains_in_full_order(host.nodes(), n, within)


def verify_embedding(b: Embedding, host: Optional[TruncatedTree] = None) -> bool:
    """Check that ``b`` is an order isomorphism from 2^{<=b.depth} into ``host``."""
    if b.depth < 0:
        return False
    index = full_nodes(b.depth)
    if set(b.images) != set(index):
        return False
    try:
        imgs = [check_node(b.images[x]) for x in index]
    except ValueError:
        return False
    if len(set(imgs)) != len(imgs):
        return False
    if host is not None and any(y not in host for y in imgs):
        return False
    for i, s in enumerate(index):
        for j, t in enumerate(index):
            if is_prefix(s, t) != is_prefix(imgs[i], imgs[j]):
                return False
    return True


def compose_embeddings(outer: Embedding, inner: Embedding) -> Embedding:
    """``σ ↦ outer[inner[σ]]``; ``inner`` must map into outer's index tree."""
    if inner.depth > outer.depth:
        raise ValueError(f"inner depth {inner.depth} exceeds outer depth {outer.depth}")
    images = {}
    for s, t in inner.images.items():
        if t not in outer.images:
            raise ValueError(f"inner image {t!r} outside outer index domain")
        images[s] = outer.images[t]
    return Embedding(inner.depth, images)
