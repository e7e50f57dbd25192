"""Finite trees of integer sequences, truncation windows, and the fixed pairing
used to name P-families."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError


def cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def seq_code(sigma) -> int:
    """Injective code of a finite sequence: 0 for the empty one, else
    1 + cantor(head, code(tail))."""
    code = 0
    for x in reversed(tuple(sigma)):
        code = 1 + cantor(x, code)
    return code


def tag_code(tag) -> int:
    """P-family index <k, payload> as a single natural number.

    The payload shape is fixed by k: an index i for k in {0, 1, 8}, a node for
    k = 2, an index pair for k in {3, 4}, (i, node) for k = 5 and a node pair
    for k = 6.
    """
    k, payload = tag
    if k in (0, 1, 8):
        inner = payload
    elif k == 2:
        inner = seq_code(payload)
    elif k in (3, 4):
        inner = cantor(*payload)
    elif k == 5:
        inner = cantor(payload[0], seq_code(payload[1]))
    elif k == 6:
        inner = cantor(seq_code(payload[0]), seq_code(payload[1]))
    else:
        raise ValueError(f"unknown P-family kind {k}")
    return cantor(k, inner)


def node_str(sigma) -> str:
    return "<" + ".".join(map(str, sigma)) + ">"


@dataclass(frozen=True)
class TreeT:
    """A finite prefix-closed set of sequences in enumeration order."""

    order: tuple

    def __post_init__(self):
        order = tuple(tuple(int(x) for x in s) for s in self.order)
        object.__setattr__(self, "order", order)
        seen = set()
        for sigma in order:
            if any(x < 0 for x in sigma):
                raise ValueError(f"node {node_str(sigma)} has a negative entry")
            if sigma in seen:
                raise ValueError(f"node {node_str(sigma)} listed twice")
            if sigma and sigma[:-1] not in seen:
                raise ValueError(f"node {node_str(sigma)} is enumerated before its parent")
            seen.add(sigma)
        if () not in seen:
            raise ValueError("the root (empty sequence) must be present")

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.order)

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in self.nodes

    def depth(self) -> int:
        return max(len(s) for s in self.order)

    @classmethod
    def from_nodes(cls, nodes):
        """Order any prefix-closed node set by (length, value)."""
        return cls(tuple(sorted({tuple(s) for s in nodes}, key=lambda s: (len(s), s))))

    @classmethod
    def chain(cls, path):
        path = tuple(path)
        return cls(tuple(path[:k] for k in range(len(path) + 1)))


@dataclass(frozen=True)
class Truncation:
    """Desk-scale window on the construction.

    s ranges over 0..S_max-1, indices i over 0..I_max, nodes over ``nodes``
    (a prefix-closed node set of depth at most I_max); exponents from items
    (1) and (2) go up to K_max and each infinite prime family gets W primes.
    """

    S_max: int
    I_max: int
    nodes: frozenset
    K_max: int
    W: int

    def __post_init__(self):
        nodes = frozenset(tuple(s) for s in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if self.S_max < 1 or self.K_max < 1 or self.W < 1 or self.I_max < 0:
            raise ValueError("S_max, K_max and W must be positive and I_max non-negative")
        for sigma in nodes:
            if sigma and sigma[:-1] not in nodes:
                raise ValueError(f"node set is not prefix-closed at {node_str(sigma)}")
            if len(sigma) > self.I_max:
                raise ValueError(f"node {node_str(sigma)} is deeper than I_max={self.I_max}")

    @classmethod
    def for_tree(cls, T: TreeT, S_max: int, I_max: int, K_max: int, W: int):
        """All nodes of T with depth at most I_max."""
        return cls(S_max, I_max, frozenset(s for s in T.order if len(s) <= I_max), K_max, W)

    def check_against(self, T: TreeT) -> None:
        extra = self.nodes - T.nodes
        if extra:
            raise ValueError(f"node {node_str(min(extra))} is not in the tree")

    def sorted_nodes(self):
        return sorted(self.nodes, key=lambda s: (len(s), s))


# tree files ----------------------------------------------------------------------

def parse_tree(text: str, path=None) -> TreeT:
    """One node per line, slash-separated; ``/`` is the root.  File order is
    the enumeration order and must list parents first."""
    order = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p for p in line.split("/") if p != ""]
        try:
            sigma = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(f"bad node {line!r}", lineno, path) from None
        if any(x < 0 for x in sigma):
            raise ParseError(f"negative entry in node {line!r}", lineno, path)
        if sigma in order:
            raise ParseError(f"node {line!r} listed twice", lineno, path)
        if sigma and sigma[:-1] not in order:
            raise ParseError(f"node {line!r} appears before its parent", lineno, path)
        order.append(sigma)
    if () not in order:
        raise ParseError("the root '/' must be listed", None, path)
    return TreeT(tuple(order))


def parse_path(text: str) -> tuple:
    return tuple(int(p) for p in text.strip().split("/") if p != "")


def format_tree(T: TreeT) -> str:
    return "\n".join("/" + "/".join(map(str, s)) if s else "/" for s in T.order) + "\n"


def load_tree(path) -> TreeT:
    with open(path) as fh:
        return parse_tree(fh.read(), path)
