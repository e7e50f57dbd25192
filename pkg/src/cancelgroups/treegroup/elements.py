"""Finite-support rational vectors over the named basis of Q^omega."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .tree import node_str

_KINDS = ("z", "x", "y", "n")


@dataclass(frozen=True, order=True)
class BasisSym:
    """z, x^s_i, y^s_i or x^s_sigma.  ``kind`` is 0 for z, 1 for x, 2 for y, 3 for a node."""

    kind: int
    s: int = 0
    index: object = 0

    def __str__(self):
        if self.kind == 0:
            return "z"
        if self.kind == 3:
            return f"x[{self.s},{node_str(self.index)}]"
        return f"{_KINDS[self.kind]}[{self.s},{self.index}]"

    @property
    def in_A(self) -> bool:
        # A is spanned by z, the x_i and the x_sigma
        return self.kind != 2


def Z() -> BasisSym:
    return BasisSym(0)


def X(s: int, i: int) -> BasisSym:
    return BasisSym(1, s, i)


def Y(s: int, i: int) -> BasisSym:
    return BasisSym(2, s, i)


def XNode(s: int, sigma) -> BasisSym:
    return BasisSym(3, s, tuple(sigma))


class GroupElement:
    """Immutable map BasisSym -> Fraction with no zero coefficients stored."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        for k, v in (coeffs or {}).items():
            if not isinstance(k, BasisSym):
                raise TypeError(f"basis symbol expected, got {k!r}")
            v = Fraction(v)
            if v:
                c[k] = v
        self._c = dict(sorted(c.items()))
        self._hash = None

    @classmethod
    def of(cls, *terms):
        """GroupElement.of((coeff, sym), ...) or GroupElement.of(sym)."""
        c = {}
        for t in terms:
            if isinstance(t, BasisSym):
                t = (1, t)
            coef, sym = t
            c[sym] = c.get(sym, 0) + Fraction(coef)
        return cls(c)

    def __getitem__(self, sym) -> Fraction:
        return self._c.get(sym, Fraction(0))

    def items(self):
        return self._c.items()

    def support(self):
        return tuple(self._c)

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return GroupElement(c)

    def __neg__(self):
        return GroupElement({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, a):
        a = Fraction(a)
        return GroupElement({k: v * a for k, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, a):
        a = Fraction(a)
        return GroupElement({k: v / a for k, v in self._c.items()})

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def denominator(self) -> int:
        d = 1
        for v in self._c.values():
            d = lcm(d, v.denominator)
        return d

    def is_integral(self) -> bool:
        return self.denominator() == 1

    def restrict(self, pred):
        return GroupElement({k: v for k, v in self._c.items() if pred(k)})

    def __repr__(self):
        return f"GroupElement({self})"

    def __str__(self):
        if not self._c:
            return "0"
        d = self.denominator()
        parts = []
        for k, v in self._c.items():
            n = v * d
            if n == 1:
                term = str(k)
            elif n == -1:
                term = f"-{k}"
            else:
                term = f"{n}{k}"
            parts.append(term)
        body = " + ".join(parts).replace("+ -", "- ")
        if d == 1:
            return body
        return f"({body})/{d}" if len(parts) > 1 else f"{body}/{d}"


def elem(sym: BasisSym) -> GroupElement:
    return GroupElement({sym: 1})
