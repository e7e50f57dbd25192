"""Divisibility profiles inside a small window of integer combinations."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..lattice import rank
from .elements import X, XNode, Y, Z, GroupElement, elem
from .grouplattice import divisibility_height, lattice_of


def window_elements(window, coeff_bound: int):
    """Nonzero integer combinations of the window symbols, coefficients in [-b, b]."""
    window = list(window)
    for coeffs in product(range(-coeff_bound, coeff_bound + 1), repeat=len(window)):
        if any(coeffs):
            yield GroupElement({s: c for s, c in zip(window, coeffs) if c})


def in_rational_span(v: GroupElement, span) -> bool:
    """Whether v lies in the Q-span of ``span``: the pure subgroup they generate."""
    span = list(span)
    syms = sorted(set(v.support()).union(*(e.support() for e in span)))
    rows = [[e[s] for s in syms] for e in span]
    if not rows:
        return not v
    return rank(rows + [[v[s] for s in syms]], dim=len(syms)) == rank(rows, dim=len(syms))


@dataclass
class ProbeResult:
    family: tuple
    target: int
    found: frozenset
    expected: frozenset
    window_size: int

    @property
    def matches(self) -> bool:
        return self.found == self.expected

    def lines(self) -> list:
        out = [f"family primes: {' '.join(map(str, self.family))}",
               f"target height: {self.target}",
               f"window elements: {self.window_size}",
               f"elements reaching the target: {len(self.found)}",
               f"elements of the expected pure subgroup: {len(self.expected)}"]
        for v in sorted(self.found - self.expected, key=str):
            out.append(f"unexpected: {v}")
        for v in sorted(self.expected - self.found, key=str):
            out.append(f"missing: {v}")
        out.append("result: " + ("pass" if self.matches else "FAIL"))
        return out


def pure_component_probe(family, gens, coeff_bound: int, K_max: int, window,
                         expected_span=None) -> ProbeResult:
    """Window elements whose divisibility height reaches K_max for every prime
    of ``family``, compared with the pure subgroup spanned by ``expected_span``."""
    family = tuple(sorted(family))
    L = lattice_of(gens)
    found, expected, n = set(), set(), 0
    for v in window_elements(window, coeff_bound):
        n += 1
        if v not in L:
            continue
        if all(divisibility_height(v, p, gens, K_max) >= K_max for p in family):
            found.add(v)
        if expected_span is not None and in_rational_span(v, expected_span):
            expected.add(v)
    return ProbeResult(family, K_max, frozenset(found), frozenset(expected), n)


# the three purity facts, as presets ------------------------------------------

def default_window(trunc) -> list:
    """z, then x^s_0 and y^s_0 for every copy s, then x^0_1 and x^0_<> when present."""
    out = [Z()]
    for s in range(trunc.S_max):
        out += [X(s, 0), Y(s, 0)]
    if trunc.I_max >= 1:
        out.append(X(0, 1))
    if () in trunc.nodes:
        out.append(XNode(0, ()))
    return out


def family_preset(name: str, gens):
    """(primes, target height, expected span) for ``t``, ``x0`` (P<0,0>) or ``R<s>``."""
    trunc, alloc = gens.trunc, gens.alloc
    if name == "t":
        return (alloc.t,), trunc.K_max, [elem(Z())]
    if name == "x0":
        return alloc.family("P", (0, 0)), trunc.K_max, [elem(X(s, 0)) for s in range(trunc.S_max)]
    if name.startswith("R") and name[1:].isdigit():
        s = int(name[1:])
        if s >= trunc.S_max:
            raise ValueError(f"R{s} is outside the truncation (S_max={trunc.S_max})")
        # items (6) carry exponent 1 only, so the target height is 1
        return alloc.family("R", s), 1, [elem(Z()) + elem(X(s, 0))]
    raise ValueError(f"unknown probe family {name!r} (use t, x0 or R<s>)")


__all__ = ["ProbeResult", "default_window", "family_preset", "in_rational_span",
           "pure_component_probe", "window_elements"]
