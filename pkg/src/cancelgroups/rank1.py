"""Rank-1 torsion-free abelian groups as subgroups of Q containing 1.

A group is given by a height function: height(p) is the largest k with
1/p^k in the group, or ``math.inf``.  Unlisted primes have height 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .descriptions import Cofinite, ColumnUnion, Finite
from .errors import ParseError
from .ntheory import factorize, is_prime

INF = math.inf


def _check_height(p, h):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"height key must be a prime, got {p!r}")
    if h == INF:
        return INF
    if not isinstance(h, int) or isinstance(h, bool) or h < 0:
        raise ValueError(f"height of {p} must be a natural number or inf, got {h!r}")
    return h


@dataclass(frozen=True)
class Rank1Group:
    heights: dict = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        clean = {}
        for p, h in self.heights.items():
            h = _check_height(p, h)
            if h:
                clean[p] = h
        object.__setattr__(self, "heights", dict(sorted(clean.items())))

    def height(self, p: int):
        return self.heights.get(p, 0)

    def infinite_primes(self) -> list[int]:
        return [p for p, h in self.heights.items() if h == INF]

    def __contains__(self, x) -> bool:
        return contains(self, x)

    def __hash__(self):
        return hash((tuple(self.heights.items()), self.label))


def contains(g: Rank1Group, x) -> bool:
    """Membership of a rational: each p^k exactly dividing the denominator needs k <= height(p)."""
    x = Fraction(x)
    if x.denominator == 1:
        return True
    for p, k in factorize(x.denominator).items():
        if k > g.height(p):
            return False
    return True


@dataclass(frozen=True)
class LocalizationRing:
    """Z_M: the subring of Q with every prime of ``inverted`` made a unit."""

    inverted: object

    def __post_init__(self):
        if not isinstance(self.inverted, (Finite, Cofinite, ColumnUnion)):
            raise TypeError("inverted must be a prime-set description")

    def inverts(self, p: int) -> bool:
        return self.inverted.contains_prime(p)

    def __contains__(self, x) -> bool:
        d = Fraction(x).denominator
        return d == 1 or all(self.inverts(p) for p in factorize(d))

    def is_unit(self, x) -> bool:
        x = Fraction(x)
        if x == 0:
            return False
        return x in self and 1 / x in self

    def __str__(self):
        return f"Z localized at {self.inverted}"


def endomorphism_ring(g: Rank1Group) -> LocalizationRing:
    """E(G) = Z_M where M is generated by the primes of infinite height."""
    return LocalizationRing(Finite(g.infinite_primes()))


def is_trivially_Z(g: Rank1Group) -> bool:
    """True only for the literal all-zero height function."""
    return not g.heights


def is_isomorphic_to_Z(g: Rank1Group) -> bool:
    # finitely many finite heights: 1/prod(p^h) generates the group
    return all(h != INF for h in g.heights.values())


def generator_if_cyclic(g: Rank1Group):
    """The rational generating g when g is cyclic, else None."""
    if not is_isomorphic_to_Z(g):
        return None
    d = 1
    for p, h in g.heights.items():
        d *= p ** h
    return Fraction(1, d)


# group description files ----------------------------------------------------

def parse_group(text: str, path=None) -> Rank1Group:
    """Lines ``PRIME HEIGHT`` or ``PRIME inf``; optional ``label NAME``; ``#`` comments."""
    heights = {}
    label = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "label":
            label = " ".join(tok[1:])
            continue
        if len(tok) != 2:
            raise ParseError("expected 'PRIME HEIGHT' or 'PRIME inf'", lineno, path)
        try:
            p = int(tok[0])
        except ValueError:
            raise ParseError(f"not an integer: {tok[0]!r}", lineno, path) from None
        if not is_prime(p):
            raise ParseError(f"{p} is not prime", lineno, path)
        if p in heights:
            raise ParseError(f"prime {p} listed twice", lineno, path)
        if tok[1].lower() in ("inf", "infinity", "∞"):
            heights[p] = INF
        else:
            try:
                h = int(tok[1])
            except ValueError:
                raise ParseError(f"height must be a natural number or 'inf': {tok[1]!r}",
                                 lineno, path) from None
            if h < 0:
                raise ParseError("height must be non-negative", lineno, path)
            heights[p] = h
    return Rank1Group(heights, label)


def format_group(g: Rank1Group) -> str:
    lines = [f"label {g.label}"] if g.label else []
    for p, h in g.heights.items():
        lines.append(f"{p} {'inf' if h == INF else h}")
    return "\n".join(lines) + "\n"


def load_group(path) -> Rank1Group:
    with open(path) as fh:
        return parse_group(fh.read(), path)
