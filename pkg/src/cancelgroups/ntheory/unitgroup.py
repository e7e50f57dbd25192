"""Structure of (Z/nZ)^x: generators, subgroup membership, and word solving.

The group is split into cyclic components (one per odd prime power, and the
usual <-1> x <5> for powers of two) and then into Sylow parts.  A Sylow part
that meets a single component is cyclic, and membership there is decided by
element orders alone.  That is what keeps moduli with a huge prime factor
in some component order tractable.  Sylow parts spread over several
components are handled with discrete logarithms and lattice membership.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt, lcm

from ..errors import ResourceError
from ..lattice import Lattice
from .primes import factorize

# BSGS is used inside groups of prime order r; beyond this r it is refused.
MAX_DLOG_PRIME = 10**13


@dataclass(frozen=True)
class _Component:
    modulus: int              # prime power the component lives modulo
    order: int
    order_factors: tuple      # ((r, e), ...)
    generator: int
    kind: str                 # "odd", "sign" (the -1 factor mod 2^k) or "five"

    def exponent_of(self, r):
        for p, e in self.order_factors:
            if p == r:
                return e
        return 0


def _bsgs(base, target, order, mod):
    m = isqrt(order) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * base % mod
    step = pow(base, -m, mod)
    cur = target % mod
    for i in range(m + 1):
        j = table.get(cur)
        if j is not None:
            return (i * m + j) % order
        cur = cur * step % mod
    raise ValueError("target is not in the subgroup generated by base")


def _dlog_prime_power(y, beta, r, e, mod):
    """x with beta^x = y, where beta has order exactly r^e modulo mod."""
    if r > MAX_DLOG_PRIME:
        raise ResourceError(f"discrete log in a group of prime order {r} is out of reach")
    gamma = pow(beta, r ** (e - 1), mod)
    beta_inv = pow(beta, -1, mod)
    x = 0
    for k in range(e):
        h = pow(pow(beta_inv, x, mod) * y % mod, r ** (e - 1 - k), mod)
        d = _bsgs(gamma, h, r, mod)
        x += d * r ** k
    return x


def _primitive_root(p, k, p_minus_1_factors):
    """A generator of (Z/p^k)^x for an odd prime p."""
    g = 2
    while True:
        if g % p and all(pow(g, (p - 1) // f, p) != 1 for f in p_minus_1_factors):
            break
        g += 1
    if k >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


class UnitGroup:
    """(Z/nZ)^x with known factorizations.

    ``factorization`` is that of n; ``hints`` are primes likely to divide
    p - 1 for the primes p | n (used when factoring component orders).
    """

    def __init__(self, n: int, factorization=None, hints=()):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.factorization = dict(factorization) if factorization else factorize(n)
        if _product(self.factorization) != n:
            raise ValueError("factorization does not multiply out to n")
        comps = []
        for p, k in sorted(self.factorization.items()):
            pk = p ** k
            if p == 2:
                if k >= 2:
                    comps.append(_Component(pk, 2, ((2, 1),), pk - 1, "sign"))
                if k >= 3:
                    o = 2 ** (k - 2)
                    comps.append(_Component(pk, o, ((2, k - 2),), 5, "five"))
                continue
            pm1 = factorize(p - 1, hints)
            of = dict(pm1)
            if k > 1:
                of[p] = of.get(p, 0) + k - 1
            comps.append(_Component(pk, p ** (k - 1) * (p - 1), tuple(sorted(of.items())),
                                    _primitive_root(p, k, list(pm1)), "odd"))
        self.components = comps
        sylow: dict[int, list] = {}
        for idx, c in enumerate(comps):
            for r, e in c.order_factors:
                sylow.setdefault(r, []).append((idx, e))
        self.sylow = dict(sorted(sylow.items()))
        self.order = _product_of_orders(comps)
        self.exponent = 1
        for c in comps:
            self.exponent = lcm(self.exponent, c.order)

    def is_unit(self, x: int) -> bool:
        return gcd(x, self.n) == 1

    # component-level views ------------------------------------------------

    def _sylow_element(self, x, comp, r):
        """The r-part of x's component, as an element of order dividing r^e."""
        e = comp.exponent_of(r)
        if comp.kind == "odd":
            return pow(x % comp.modulus, comp.order // r ** e, comp.modulus)
        if comp.kind == "sign":
            return 1 if x % 4 == 1 else comp.modulus - 1
        y = x % comp.modulus
        if y % 4 == 3:
            y = comp.modulus - y
        return y

    def _order_exponent(self, x, comp, r):
        y = self._sylow_element(x, comp, r)
        k = 0
        while y != 1:
            y = pow(y, r, comp.modulus)
            k += 1
        return k

    def _log(self, x, comp, r):
        """log of x's component r-part, modulo r^e."""
        e = comp.exponent_of(r)
        y = self._sylow_element(x, comp, r)
        if comp.kind == "sign":
            return 0 if y == 1 else 1
        if comp.kind == "five":
            return _dlog_prime_power(y, 5, 2, e, comp.modulus)
        beta = pow(comp.generator, comp.order // r ** e, comp.modulus)
        return _dlog_prime_power(y, beta, r, e, comp.modulus)

    def _log_vector(self, x, r):
        return [self._log(x, self.components[i], r) for i, _ in self.sylow[r]]

    def _relations(self, r):
        k = len(self.sylow[r])
        return [[r ** e if a == b else 0 for b in range(k)]
                for a, (_, e) in enumerate(self.sylow[r])]

    # subgroup questions -----------------------------------------------------

    def subgroup(self, gens=()):
        return Subgroup(self, gens)

    def generates(self, gens) -> bool:
        return self.subgroup(gens).is_full()

    def contains(self, x, gens) -> bool:
        return self.subgroup(gens).contains(x)

    def express(self, target, gens):
        """Exponents E with prod(g_k^E_k) = target (mod n), or None."""
        return self.subgroup(gens).express(target)


class Subgroup:
    """The subgroup of a UnitGroup generated by a growing list of units."""

    def __init__(self, group: UnitGroup, gens=()):
        self.group = group
        self.gens: list[int] = []
        self._max_order = {}      # cyclic Sylow r -> (max order exponent, gen index)
        self._vectors = {}        # multi-component Sylow r -> list of log vectors
        for g in gens:
            self.add(g)

    def add(self, g: int) -> None:
        G = self.group
        if not G.is_unit(g):
            raise ValueError(f"{g} is not a unit modulo {G.n}")
        self.gens.append(g % G.n)
        idx = len(self.gens) - 1
        for r, comps in G.sylow.items():
            if len(comps) == 1:
                k = G._order_exponent(g, G.components[comps[0][0]], r)
                if k > self._max_order.get(r, (0, None))[0]:
                    self._max_order[r] = (k, idx)
            else:
                self._vectors.setdefault(r, []).append(G._log_vector(g, r))

    def _sylow_lattice(self, r):
        G = self.group
        return Lattice(self._vectors.get(r, []) + G._relations(r), dim=len(G.sylow[r]))

    def contains(self, x: int) -> bool:
        G = self.group
        if not G.is_unit(x):
            raise ValueError(f"{x} is not a unit modulo {G.n}")
        for r, comps in G.sylow.items():
            if len(comps) == 1:
                have = self._max_order.get(r, (0, None))[0]
                if G._order_exponent(x, G.components[comps[0][0]], r) > have:
                    return False
            elif G._log_vector(x, r) not in self._sylow_lattice(r):
                return False
        return True

    def is_full(self) -> bool:
        G = self.group
        for r, comps in G.sylow.items():
            if len(comps) == 1:
                if self._max_order.get(r, (0, None))[0] < comps[0][1]:
                    return False
            else:
                L = self._sylow_lattice(r)
                if any(row[i] != 1 for i, row in enumerate(L.integer_basis())):
                    return False
        return True

    def express(self, target: int):
        G = self.group
        if not G.is_unit(target):
            raise ValueError(f"{target} is not a unit modulo {G.n}")
        m = len(self.gens)
        moduli = []
        residues = [[] for _ in range(m)]
        for r, comps in G.sylow.items():
            top = max(e for _, e in comps)
            coeffs = [0] * m
            if len(comps) == 1:
                comp = G.components[comps[0][0]]
                e = comps[0][1]
                k_t = G._order_exponent(target, comp, r)
                if k_t:
                    k_g, idx = self._max_order.get(r, (0, None))
                    if k_t > k_g:
                        return None
                    lg = G._log(self.gens[idx], comp, r)
                    lt = G._log(target, comp, r)
                    # lg = r^(e-k_g) * unit; lt = r^(e-k_t) * something
                    shift = r ** (e - k_g)
                    unit = (lg // shift) % r ** k_g
                    coeffs[idx] = (lt // shift) * pow(unit, -1, r ** k_g) % r ** k_g
            else:
                L = Lattice(self._vectors.get(r, []) + G._relations(r), dim=len(comps))
                c = L.coefficients(G._log_vector(target, r))
                if c is None:
                    return None
                coeffs = c[:m]
            moduli.append(r ** top)
            for k in range(m):
                residues[k].append(coeffs[k] % r ** top)
        exps = []
        for k in range(m):
            x, mod = 0, 1
            for res, mk in zip(residues[k], moduli):
                t = (res - x) * pow(mod, -1, mk) % mk
                x += mod * t
                mod *= mk
            exps.append(x)
        value = 1
        for g, e in zip(self.gens, exps):
            value = value * pow(g, e, G.n) % G.n
        if value != target % G.n:
            raise AssertionError("unit-group word failed exact re-verification")
        return exps


def _product(factorization):
    out = 1
    for p, e in factorization.items():
        out *= p ** e
    return out


def _product_of_orders(comps):
    out = 1
    for c in comps:
        out *= c.order
    return out


def unit_group_generators(n: int, factorization=None, hints=()) -> list[int]:
    """Greedy generating set of (Z/nZ)^x: repeatedly take the smallest unit
    outside the subgroup generated so far."""
    if n < 2:
        raise ValueError("n must be at least 2")
    G = UnitGroup(n, factorization, hints)
    H = G.subgroup()
    gens = []
    c = 1
    while not H.is_full():
        c += 1
        if gcd(c, n) != 1 or H.contains(c):
            continue
        H.add(c)
        gens.append(c)
    return gens


def subgroup_generated(n: int, gens) -> set[int]:
    """Closure of gens under multiplication mod n, by enumeration."""
    if n < 1:
        raise ValueError("modulus must be positive")
    gens = [g % n for g in gens]
    for g in gens:
        if gcd(g, n) != 1:
            raise ValueError(f"{g} is not a unit modulo {n}")
    seen = {1 % n}
    frontier = [1 % n]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % n
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen
