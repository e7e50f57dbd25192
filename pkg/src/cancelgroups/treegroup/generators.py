"""The generating families (1)-(9) of H_T, restricted to a truncation.

Item 0 stands for the basis vectors themselves, which are generators too.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .alloc import PrimeAllocation
from .elements import X, XNode, Y, Z, BasisSym, GroupElement, elem
from .tree import TreeT, Truncation, node_str, tag_code


@dataclass(frozen=True)
class Generator:
    element: GroupElement
    item: int                 # construction item 0..9
    family: str               # "basis", "Q", "t", "P" or "R"
    tag: object = None        # P-tag, or s for R
    prime: int | None = None
    exponent: int = 0
    sigma: tuple | None = None   # the enumerated node for items 7-9
    part: int = 0             # 0 for the first element of a pair, 1 for the second

    def sort_key(self):
        tag = tag_code(self.tag) if self.family == "P" else (self.tag if self.tag is not None else -1)
        sig = (len(self.sigma), self.sigma) if self.sigma is not None else (-1, ())
        return (self.item, tag, sig, self.part, self.prime or 0, self.exponent,
                tuple((str(k), v) for k, v in self.element.items()))

    def describe(self) -> str:
        head = f"item ({self.item})" if self.item else "basis"
        where = ""
        if self.family == "P":
            where = f" P<{self.tag[0]},{self.tag[1]}>"
        elif self.family == "R":
            where = f" R_{self.tag}"
        elif self.family in ("Q", "t"):
            where = f" {self.family}"
        if self.sigma is not None:
            where += f" sigma={node_str(self.sigma)}"
        return f"{head}{where}: {self.element}"


@dataclass(frozen=True)
class GeneratorSet:
    trunc: Truncation
    alloc: PrimeAllocation
    generators: tuple
    basis: tuple              # BasisSym coordinates, in canonical order

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def elements(self) -> list:
        return [g.element for g in self.generators]

    def by_item(self, item) -> list:
        return [g for g in self.generators if g.item == item]


def truncation_basis(trunc: Truncation) -> tuple:
    out = [Z()]
    for s in range(trunc.S_max):
        out += [X(s, i) for i in range(trunc.I_max + 1)]
        out += [Y(s, i) for i in range(trunc.I_max + 1)]
        out += [XNode(s, sigma) for sigma in trunc.sorted_nodes()]
    return tuple(sorted(out))


def enumerate_generators(T: TreeT, trunc: Truncation, alloc: PrimeAllocation) -> GeneratorSet:
    trunc.check_against(T)
    K = trunc.K_max
    idx = range(trunc.I_max + 1)
    nodes = trunc.sorted_nodes()
    S = range(trunc.S_max)
    basis = truncation_basis(trunc)
    out = []

    def emit(e, item, family, tag=None, prime=None, exponent=0, sigma=None, part=0):
        out.append(Generator(e, item, family, tag, prime, exponent, sigma, part))

    for sym in basis:
        emit(elem(sym), 0, "basis")

    # (1) every basis vector divisible by Q^K, z by t^K
    for sym in basis:
        for q in alloc.Q:
            for k in range(1, K + 1):
                emit(elem(sym) / q ** k, 1, "Q", prime=q, exponent=k)
    for k in range(1, K + 1):
        emit(elem(Z()) / alloc.t ** k, 1, "t", prime=alloc.t, exponent=k)

    for s in S:
        # (2)
        for i in idx:
            for tag, sym in (((0, i), X(s, i)), ((1, i), Y(s, i))):
                for p in alloc.family("P", tag):
                    for k in range(1, K + 1):
                        emit(elem(sym) / p ** k, 2, "P", tag, p, k)
        for sigma in nodes:
            for p in alloc.family("P", (2, sigma)):
                for k in range(1, K + 1):
                    emit(elem(XNode(s, sigma)) / p ** k, 2, "P", (2, sigma), p, k)
        # (3)
        for i, j in combinations(idx, 2):
            for p in alloc.family("P", (3, (i, j))):
                emit((elem(X(s, i)) + elem(X(s, j))) / p, 3, "P", (3, (i, j)), p, 1)
            for p in alloc.family("P", (4, (i, j))):
                emit((elem(Y(s, i)) + elem(Y(s, j))) / p, 3, "P", (4, (i, j)), p, 1)
        # (4)
        for i in idx:
            for sigma in nodes:
                for p in alloc.family("P", (5, (i, sigma))):
                    emit((elem(X(s, i)) + elem(XNode(s, sigma))) / p, 4, "P", (5, (i, sigma)), p, 1)
        for sigma, rho in combinations(nodes, 2):
            for p in alloc.family("P", (6, (sigma, rho))):
                emit((elem(XNode(s, sigma)) + elem(XNode(s, rho))) / p, 4, "P",
                     (6, (sigma, rho)), p, 1)
        # (5)
        for i in idx:
            for p in alloc.family("P", (8, i)):
                emit((elem(X(s, i)) + elem(Y(s, i))) / p, 5, "P", (8, i), p, 1)
        # (6)
        for r in alloc.family("R", s):
            emit((elem(Z()) + elem(X(s, 0))) / r, 6, "R", s, r, 1)

    # (7)-(9) for each enumerated node, in enumeration order
    for sigma in [v for v in T.order if v in trunc.nodes]:
        n = len(sigma)
        for s in S:
            if n > 0:
                for i in range(n + 1):
                    for p in alloc.family("P", (1, i)):
                        y_plus = elem(Y(s, i)) + elem(XNode(s, sigma[:i]))
                        emit(y_plus / p ** n, 7, "P", (1, i), p, n, sigma, 0)
                        emit(elem(XNode(s, sigma[:i])) / p ** n, 7, "P", (1, i), p, n, sigma, 1)
            for i in range(n):
                for p in alloc.family("P", (4, (i, n))):
                    first = (elem(Y(s, i)) + elem(XNode(s, sigma[:i]))
                             + elem(Y(s, n)) + elem(XNode(s, sigma)))
                    emit(first / p, 8, "P", (4, (i, n)), p, 1, sigma, 0)
                    second = elem(XNode(s, sigma[:i])) + elem(XNode(s, sigma))
                    emit(second / p, 8, "P", (4, (i, n)), p, 1, sigma, 1)
            for p in alloc.family("P", (8, n)):
                emit((elem(Y(s, n)) + elem(XNode(s, sigma))) / p, 9, "P", (8, n), p, 1, sigma, 0)
                emit((elem(X(s, n)) - elem(XNode(s, sigma))) / p, 9, "P", (8, n), p, 1, sigma, 1)

    out.sort(key=Generator.sort_key)
    return GeneratorSet(trunc, alloc, tuple(out), basis)


def uses_allocated_primes(gens: GeneratorSet) -> bool:
    """Every denominator factors over the allocated primes."""
    primes = gens.alloc.all_primes()
    for g in gens:
        d = g.element.denominator()
        for p in primes:
            while d % p == 0:
                d //= p
        if d != 1:
            return False
    return True


__all__ = ["BasisSym", "Generator", "GeneratorSet", "enumerate_generators",
           "truncation_basis", "uses_allocated_primes"]
