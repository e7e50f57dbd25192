"""Exact membership in the subgroup of Q^omega spanned by a generator list.

When every basis vector of the truncation is itself a generator, the span L
satisfies Z^n <= L, so L/Z^n splits into primary parts.  Each prime l is
handled by its own lattice of scale l^e fed with the l-parts of the
generators (for g = a/d with l^e || d, the multiple (d/l^e) g = a/l^e).  A
vector is in L iff each of its l-parts is.  Certificates are assembled from
the per-prime coefficients plus an integral residual on the basis vectors,
then re-verified exactly.  Without the basis vectors a single HNF over all
generators is used instead.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..lattice import FullRankLattice, Lattice
from ..ntheory import factorize
from .elements import GroupElement


def _vector(v: GroupElement, index) -> list:
    out = [Fraction(0)] * len(index)
    for sym, c in v.items():
        out[index[sym]] = c
    return out


class GroupLattice:
    def __init__(self, elements, coords=None, hints=()):
        self.elements = list(elements)
        if coords is None:
            syms = set()
            for e in self.elements:
                syms.update(e.support())
            coords = sorted(syms)
        self.coords = tuple(coords)
        self.index = {s: k for k, s in enumerate(self.coords)}
        self.dim = len(self.coords)
        self.hints = tuple(sorted(set(hints)))
        for e in self.elements:
            if any(s not in self.index for s in e.support()):
                raise ValueError(f"generator {e} leaves the coordinate set")
        unit_pos = {}
        for k, e in enumerate(self.elements):
            sup = e.support()
            if len(sup) == 1 and e[sup[0]] == 1:
                unit_pos.setdefault(sup[0], k)
        self.unit_pos = unit_pos
        self.primary = len(unit_pos) == self.dim
        self._fallback = None
        self._parts = {}      # l -> list of (generator index, multiplier, l-vector)
        self._lat = {}        # l -> FullRankLattice
        self._coef = {}       # l -> Lattice with transform, built lazily
        if self.primary:
            self._split()

    def _factor(self, d):
        return factorize(d, self.hints)

    def _split(self):
        exps = {}
        for k, e in enumerate(self.elements):
            d = e.denominator()
            if d == 1:
                continue
            a = [x * d for x in _vector(e, self.index)]
            for ell, ex in self._factor(d).items():
                pe = ell ** ex
                m = d // pe
                self._parts.setdefault(ell, []).append((k, m, [x / pe for x in a]))
                exps[ell] = max(exps.get(ell, 0), ex)
        for ell, rows in self._parts.items():
            L = FullRankLattice(self.dim, ell ** exps[ell])
            for _, _, vec in rows:
                L.add(vec)
            self._lat[ell] = L

    def _local_parts(self, v: GroupElement):
        """(l, l-part) pairs of v modulo Z^n, or None if v leaves the coordinates."""
        if any(s not in self.index for s in v.support()):
            return None
        d = v.denominator()
        if d == 1:
            return []
        b = [x * d for x in _vector(v, self.index)]
        out = []
        for ell, ex in self._factor(d).items():
            pe = ell ** ex
            c = pow(d // pe, -1, pe)
            out.append((ell, [Fraction(int(x) * c % pe, pe) for x in b]))
        return out

    def __contains__(self, v: GroupElement) -> bool:
        if not self.primary:
            return self.coefficients(v) is not None
        parts = self._local_parts(v)
        if parts is None:
            return False
        return all(ell in self._lat and vec in self._lat[ell] for ell, vec in parts)

    def coefficients(self, v: GroupElement):
        """Integer coefficients over ``elements`` summing exactly to v, or None."""
        if not self.primary:
            if any(s not in self.index for s in v.support()):
                return None
            if self._fallback is None:
                rows = [_vector(e, self.index) for e in self.elements]
                self._fallback = Lattice(rows, dim=self.dim)
            return self._fallback.coefficients(_vector(v, self.index)) if self.dim else []
        parts = self._local_parts(v)
        if parts is None:
            return None
        out = [0] * len(self.elements)
        for ell, vec in parts:
            if ell not in self._lat or vec not in self._lat[ell]:
                return None
            rows = self._parts[ell]
            if ell not in self._coef:
                units = [[int(i == j) for j in range(self.dim)] for i in range(self.dim)]
                self._coef[ell] = Lattice([r[2] for r in rows] + units, dim=self.dim)
            lam = self._coef[ell].coefficients(vec)
            for (k, m, _), c in zip(rows, lam):
                out[k] += c * m
        acc = GroupElement()
        for c, e in zip(out, self.elements):
            if c:
                acc = acc + e * c
        residual = v - acc
        if not residual.is_integral():
            raise AssertionError("primary certificate left a non-integral residual")
        for sym, c in residual.items():
            out[self.unit_pos[sym]] += int(c)
        check = GroupElement()
        for c, e in zip(out, self.elements):
            if c:
                check = check + e * c
        if check != v:
            raise AssertionError("membership certificate failed exact re-verification")
        return out


def lattice_of(gens) -> GroupLattice:
    """The (cached) membership engine of a GeneratorSet or list of elements."""
    cached = getattr(gens, "_group_lattice", None)
    if cached is not None:
        return cached
    if hasattr(gens, "basis") and hasattr(gens, "alloc"):
        L = GroupLattice(gens.elements(), gens.basis, gens.alloc.all_primes())
        object.__setattr__(gens, "_group_lattice", L)
        return L
    return GroupLattice(list(gens))


def member(v: GroupElement, gens):
    """(True, integer coefficients aligned with gens) or (False, None)."""
    coeffs = lattice_of(gens).coefficients(v)
    return (coeffs is not None), coeffs


def contains(v: GroupElement, gens) -> bool:
    return v in lattice_of(gens)


def divisibility_height(v: GroupElement, p: int, gens, K_max: int) -> int:
    """Largest k <= K_max with v/p^k in the span; v itself must be in it."""
    L = lattice_of(gens)
    if v not in L:
        raise ValueError(f"{v} is not in the span of the generators")
    k = 0
    while k < K_max and v / p ** (k + 1) in L:
        k += 1
    return k


def brute_force_member(v: GroupElement, elements, bound: int = 3):
    """Exhaustive search over coefficient vectors in [-bound, bound]; an oracle."""
    elements = list(elements)
    for coeffs in product(range(-bound, bound + 1), repeat=len(elements)):
        acc = GroupElement()
        for c, e in zip(coeffs, elements):
            if c:
                acc = acc + e * c
        if acc == v:
            return list(coeffs)
    return None


__all__ = ["GroupLattice", "brute_force_member", "contains", "divisibility_height",
           "lattice_of", "member"]
