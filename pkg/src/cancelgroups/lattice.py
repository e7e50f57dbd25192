"""Exact integer-lattice machinery: Hermite normal form, membership, intersection.

Rows are lattice vectors.  Rational generators are handled by clearing
denominators to a common scale; everything is exact Python integers.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _identity(m):
    return [[int(i == j) for j in range(m)] for i in range(m)]


def hermite_normal_form(matrix, with_transform=True):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ matrix``, ``U`` unimodular, the nonzero
    rows of ``H`` first, pivots positive and strictly increasing in column,
    and entries above each pivot reduced into ``[0, pivot)``.  ``U`` is None
    when ``with_transform`` is false.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if with_transform else None
    r = 0
    for c in range(n):
        if r == m:
            break
        for k in range(r + 1, m):
            b = A[k][c]
            if b == 0:
                continue
            a = A[r][c]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ak = A[r], A[k]
            A[r] = [x * u + y * v for u, v in zip(Ar, Ak)]
            A[k] = [ag * v - bg * u for u, v in zip(Ar, Ak)]
            if U is not None:
                Ur, Uk = U[r], U[k]
                U[r] = [x * u + y * v for u, v in zip(Ur, Uk)]
                U[k] = [ag * v - bg * u for u, v in zip(Ur, Uk)]
        p = A[r][c]
        if p == 0:
            continue
        if p < 0:
            A[r] = [-x for x in A[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
            p = -p
        for k in range(r):
            q = A[k][c] // p
            if q:
                A[k] = [u - q * v for u, v in zip(A[k], A[r])]
                if U is not None:
                    U[k] = [u - q * v for u, v in zip(U[k], U[r])]
        r += 1
    return A, U


def _denominator_lcm(rows):
    d = 1
    for row in rows:
        for x in row:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
    return d


class Lattice:
    """The Z-span of finitely many rational vectors of a fixed dimension."""

    def __init__(self, generators, dim=None, with_transform=True):
        self.generators = [tuple(Fraction(x) for x in g) for g in generators]
        if dim is None:
            if not self.generators:
                raise ValueError("dimension needed for an empty generator list")
            dim = len(self.generators[0])
        if any(len(g) != dim for g in self.generators):
            raise ValueError("generators have inconsistent dimensions")
        self.dim = dim
        self.scale = _denominator_lcm(self.generators)
        M = [[int(x * self.scale) for x in g] for g in self.generators]
        H, U = hermite_normal_form(M, with_transform) if M else ([], [])
        rank = sum(1 for row in H if any(row))
        self._H = H[:rank]
        self._U = U[:rank] if U is not None else None
        self.rank = rank
        self.pivots = [next(j for j, x in enumerate(row) if x) for row in self._H]

    def basis(self):
        """Reduced basis rows as Fractions."""
        return [tuple(Fraction(x, self.scale) for x in row) for row in self._H]

    def integer_basis(self):
        return [list(row) for row in self._H]

    def _reduce(self, v):
        """Coordinates of v on the HNF rows, or None when v is not in the lattice."""
        if len(v) != self.dim:
            raise ValueError("vector has the wrong dimension")
        w = []
        for x in v:
            y = Fraction(x) * self.scale
            if y.denominator != 1:
                return None
            w.append(y.numerator)
        coords = []
        for row, p in zip(self._H, self.pivots):
            if any(w[:p]):
                return None
            q, rem = divmod(w[p], row[p])
            if rem:
                return None
            if q:
                w = [a - q * b for a, b in zip(w, row)]
            coords.append(q)
        if any(w):
            return None
        return coords

    def __contains__(self, v):
        return self._reduce(v) is not None

    def coefficients(self, v):
        """Integer coefficients expressing v over the original generators, or None."""
        if self._U is None:
            raise ValueError("lattice was built without a transform")
        coords = self._reduce(v)
        if coords is None:
            return None
        m = len(self.generators)
        out = [0] * m
        for c, urow in zip(coords, self._U):
            if c:
                for i in range(m):
                    out[i] += c * urow[i]
        combo = combine(self.generators, out, self.dim)
        if combo != tuple(Fraction(x) for x in v):
            raise AssertionError("lattice certificate failed exact re-verification")
        return out


def combine(generators, coefficients, dim):
    acc = [Fraction(0)] * dim
    for g, c in zip(generators, coefficients):
        if c:
            for i, x in enumerate(g):
                acc[i] += c * x
    return tuple(acc)


def member(v, generators):
    """Lattice membership with certificate.

    Returns ``(True, coefficients)`` with an exactly re-verified integer
    combination of ``generators`` equal to ``v``, or ``(False, None)``.
    """
    dim = len(v)
    coeffs = Lattice(generators, dim=dim).coefficients(v)
    return (coeffs is not None), coeffs


def intersect(first: Lattice, second: Lattice) -> Lattice:
    """Lattice intersection via the integer left kernel of the stacked bases."""
    if first.dim != second.dim:
        raise ValueError("dimension mismatch")
    D = lcm(first.scale, second.scale)
    B1 = [[x * (D // first.scale) for x in row] for row in first.integer_basis()]
    B2 = [[x * (D // second.scale) for x in row] for row in second.integer_basis()]
    stacked = B1 + B2
    if not stacked:
        return Lattice([], dim=first.dim)
    H, U = hermite_normal_form(stacked)
    r1 = len(B1)
    vectors = []
    for hrow, urow in zip(H, U):
        if any(hrow):
            continue
        vec = [0] * first.dim
        for c, brow in zip(urow[:r1], B1):
            if c:
                vec = [a + c * b for a, b in zip(vec, brow)]
        vectors.append([Fraction(x, D) for x in vec])
    return Lattice(vectors, dim=first.dim)


def rank(rows, dim=None) -> int:
    return Lattice(rows, dim=dim, with_transform=False).rank


class FullRankLattice:
    """A lattice L with Z^n <= L <= (1/D) Z^n, kept as a triangular basis of D*L.

    Because D*e_j lies in D*L for every j, entries can be reduced modulo D at
    every step, so sizes stay bounded by D no matter how many vectors are
    inserted.
    """

    def __init__(self, dim: int, scale: int):
        if scale < 1:
            raise ValueError("scale must be positive")
        self.dim = dim
        self.scale = scale
        self._B = [[scale if i == j else 0 for j in range(dim)] for i in range(dim)]

    def _scaled(self, v):
        out = []
        for x in v:
            y = Fraction(x) * self.scale
            if y.denominator != 1:
                return None
            out.append(y.numerator % self.scale)
        return out

    def add(self, v) -> None:
        w = self._scaled(v)
        if w is None:
            raise ValueError("vector denominators exceed the lattice scale")
        D = self.scale
        B = self._B
        for j in range(self.dim):
            b = w[j]
            if b == 0:
                continue
            row = B[j]
            a = row[j]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            B[j] = [(x * u + y * t) % D if k > j else x * u + y * t
                    for k, (u, t) in enumerate(zip(row, w))]
            w = [(ag * t - bg * u) % D for u, t in zip(row, w)]

    def __contains__(self, v) -> bool:
        w = self._scaled(v)
        if w is None:
            return False
        D = self.scale
        for j in range(self.dim):
            t = w[j]
            if t == 0:
                continue
            row = self._B[j]
            q, rem = divmod(t, row[j])
            if rem:
                return False
            w = [(a - q * b) % D for a, b in zip(w, row)]
        return True

    def pivots(self):
        return [self._B[j][j] for j in range(self.dim)]

    def basis_rows(self):
        """A basis of L as rows of Fractions."""
        return [[Fraction(x, self.scale) for x in row] for row in self._B]

    def index_over_integers(self) -> int:
        """[L : Z^n] = D^n / det(D*L)."""
        det = 1
        for p in self.pivots():
            det *= p
        return self.scale ** self.dim // det


def gcd_all(values) -> int:
    return reduce(gcd, values, 0)
