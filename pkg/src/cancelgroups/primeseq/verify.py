"""Exhaustive checks of the five sequence invariants over the stored stages."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from ..ntheory import UnitGroup, factorize, is_prime, is_quadratic_residue
from .sequence import PrimeSequence, r_enumeration

CLAUSES = {
    "1": "P[i,j] generates (Z/a_i Z)^x",
    "2": "every p in P[i,j] is a quadratic residue mod q_k for k > i",
    "3": "a_0 = 3 and a_(i+1) = a_i q_(i+1) r_(i+1)",
    "4": "q_i is coprime to a_j for j < i",
    "5": "no q_k lies in any P[i,j]; the P[i,j] are pairwise disjoint",
    "provenance": "every recorded scan reproduces its entry and is minimal",
}


@dataclass
class ClauseResult:
    clause: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None

    @property
    def description(self):
        return CLAUSES[self.clause]


@dataclass
class InvariantReport:
    stages: int
    clauses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failing(self):
        return [c for c in self.clauses if not c.passed]

    def lines(self):
        out = [f"stages: {self.stages}"]
        for c in self.clauses:
            status = "pass" if c.passed else "FAIL"
            line = f"clause {c.clause}: {status} ({c.checked} checks) - {c.description}"
            if c.counterexample:
                line += f"; counterexample: {c.counterexample}"
            out.append(line)
        return out


def _clause1(seq):
    checked = 0
    hints = seq.known_primes()
    for i in range(seq.stages + 1):
        fact = factorize(seq.a[i], hints)
        G = UnitGroup(seq.a[i], fact, hints)
        for j in range(seq.stages + 1 - i):
            col = seq.P.get((i, j))
            checked += 1
            if col is None:
                return ClauseResult("1", False, checked, f"P[{i},{j}] missing")
            bad = [p for p in col if gcd(p, seq.a[i]) != 1]
            if bad:
                return ClauseResult("1", False, checked, f"{bad[0]} in P[{i},{j}] is not a unit mod a_{i}")
            if not G.generates(col):
                return ClauseResult("1", False, checked,
                                    f"P[{i},{j}] = {sorted(col)} does not generate (Z/{seq.a[i]})^x")
    return ClauseResult("1", True, checked)


def _clause2(seq):
    checked = 0
    for (i, j), col in sorted(seq.P.items()):
        for p in col:
            for k in range(i + 1, seq.stages + 1):
                qk = seq.q[k]
                checked += 1
                if p % qk == 0 or not is_quadratic_residue(p, qk):
                    return ClauseResult("2", False, checked,
                                        f"{p} in P[{i},{j}] is not a residue mod q_{k} = {qk}")
    return ClauseResult("2", True, checked)


def _clause3(seq):
    checked = 1
    if not seq.a or seq.a[0] != 3:
        return ClauseResult("3", False, checked, f"a_0 = {seq.a[0] if seq.a else None}")
    for i in range(1, seq.stages + 1):
        checked += 2
        if seq.r.get(i) != r_enumeration(i):
            return ClauseResult("3", False, checked,
                                f"r_{i} = {seq.r.get(i)} but the enumeration gives {r_enumeration(i)}")
        if seq.a[i] != seq.a[i - 1] * seq.q[i] * seq.r[i]:
            return ClauseResult("3", False, checked, f"a_{i} != a_{i-1} q_{i} r_{i}")
    return ClauseResult("3", True, checked)


def _clause4(seq):
    checked = 0
    for i in range(1, seq.stages + 1):
        qi = seq.q[i]
        checked += 1
        if not is_prime(qi):
            return ClauseResult("4", False, checked, f"q_{i} = {qi} is not prime")
        for j in range(i):
            checked += 1
            if gcd(qi, seq.a[j]) != 1:
                return ClauseResult("4", False, checked,
                                    f"gcd(q_{i}, a_{j}) = {gcd(qi, seq.a[j])}")
    return ClauseResult("4", True, checked)


def _clause5(seq):
    checked = 0
    owner = {}
    qs = {v: k for k, v in seq.q.items()}
    for key, col in sorted(seq.P.items()):
        for p in col:
            checked += 1
            if not is_prime(p):
                return ClauseResult("5", False, checked, f"{p} in P{list(key)} is not prime")
            if p in qs:
                return ClauseResult("5", False, checked, f"q_{qs[p]} = {p} lies in P{list(key)}")
            if p in owner:
                return ClauseResult("5", False, checked,
                                    f"{p} lies in both P{list(owner[p])} and P{list(key)}")
            owner[p] = key
    return ClauseResult("5", True, checked)


def verify_provenance(seq: PrimeSequence, minimality: bool = True) -> ClauseResult:
    """Re-check every recorded scan: the entry satisfies its congruence, exceeds
    its bound and, with `minimality`, no smaller candidate in the class is prime."""
    checked = 0
    for rec in seq.provenance:
        sc = rec.scan
        checked += 1
        if rec.kind == "q":
            entry = seq.q.get(rec.i)
            label = f"q_{rec.i}"
        else:
            col = seq.P.get((rec.i, rec.j), ())
            entry = col[rec.k] if rec.k < len(col) else None
            label = f"P[{rec.i},{rec.j}][{rec.k}]"
        if entry != sc.result:
            return ClauseResult("provenance", False, checked, f"{label} differs from its scan record")
        if sc.result % sc.modulus != sc.residue or sc.result <= sc.lower_bound:
            return ClauseResult("provenance", False, checked, f"{label} violates its recorded congruence")
        if minimality:
            c = sc.result - sc.modulus
            while c > sc.lower_bound:
                if is_prime(c):
                    return ClauseResult("provenance", False, checked,
                                        f"{label}: smaller prime {c} in the same class")
                c -= sc.modulus
    return ClauseResult("provenance", True, checked)


def verify_invariants(seq: PrimeSequence, provenance: bool = False) -> InvariantReport:
    report = InvariantReport(seq.stages)
    for fn in (_clause1, _clause2, _clause3, _clause4, _clause5):
        try:
            report.clauses.append(fn(seq))
        except (KeyError, IndexError, ValueError) as exc:
            name = fn.__name__[-1]
            report.clauses.append(ClauseResult(name, False, 0, f"malformed data: {exc}"))
    if provenance:
        report.clauses.append(verify_provenance(seq))
    return report
