"""Disjoint prime families {t}, Q, P_tag and R_s for a truncation."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..ntheory import primes_from
from .tree import Truncation, tag_code

T_PRIME = 2


def needed_tags(trunc: Truncation) -> list:
    """Every P-family tag the truncated construction refers to, sorted by code."""
    idx = range(trunc.I_max + 1)
    nodes = trunc.sorted_nodes()
    tags = set()
    for i in idx:
        tags.update({(0, i), (1, i), (8, i)})
    for sigma in nodes:
        tags.add((2, sigma))
        for i in idx:
            tags.add((5, (i, sigma)))
    for i, j in combinations(idx, 2):
        tags.update({(3, (i, j)), (4, (i, j))})
    for sigma, rho in combinations(nodes, 2):
        tags.add((6, (sigma, rho)))
    return sorted(tags, key=tag_code)


def family_order(trunc: Truncation) -> list:
    """Q, then P-tags in code order interleaved with R_0, R_1, ..."""
    ps = [("P", tag) for tag in needed_tags(trunc)]
    rs = [("R", s) for s in range(trunc.S_max)]
    out = [("Q", None)]
    for k in range(max(len(ps), len(rs))):
        if k < len(ps):
            out.append(ps[k])
        if k < len(rs):
            out.append(rs[k])
    return out


@dataclass(frozen=True)
class PrimeAllocation:
    t: int
    Q: tuple
    P: dict              # tag -> tuple of primes
    R: dict              # s -> tuple of primes
    families: tuple      # dealing order

    def family(self, name, key=None) -> tuple:
        if name == "Q":
            return self.Q
        if name == "t":
            return (self.t,)
        if name == "P":
            if key not in self.P:
                raise KeyError(f"P-family {key} was not allocated")
            return self.P[key]
        if name == "R":
            if key not in self.R:
                raise KeyError(f"R-family {key} was not allocated")
            return self.R[key]
        raise KeyError(name)

    def all_primes(self) -> list:
        out = [self.t, *self.Q]
        for col in self.P.values():
            out += col
        for col in self.R.values():
            out += col
        return out

    def owner(self, p):
        """The family a prime was dealt to, or None."""
        if p == self.t:
            return ("t", None)
        if p in self.Q:
            return ("Q", None)
        for tag, col in self.P.items():
            if p in col:
                return ("P", tag)
        for s, col in self.R.items():
            if p in col:
                return ("R", s)
        return None


def allocate_primes(trunc: Truncation) -> PrimeAllocation:
    """t = 2; odd primes in ascending order dealt round-robin, W rounds."""
    fams = family_order(trunc)
    dealt = {f: [] for f in fams}
    gen = primes_from(3)
    for _ in range(trunc.W):
        for f in fams:
            dealt[f].append(next(gen))
    Q = tuple(dealt[("Q", None)])
    P = {key: tuple(v) for (name, key), v in dealt.items() if name == "P"}
    R = {key: tuple(v) for (name, key), v in dealt.items() if name == "R"}
    return PrimeAllocation(T_PRIME, Q, P, R, tuple(fams))
