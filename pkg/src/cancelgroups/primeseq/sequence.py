"""The computable sequences a_i, q_i, r_i and the prime columns P[i, j]."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from ..ntheory import (DEFAULT_SCAN_CEILING, Congruence, ScanRecord, crt_combine,
                       dirichlet_scan, nth_prime, unit_group_generators)

log = logging.getLogger(__name__)

DEFAULT_STAGE_CAP = 3


def r_enumeration(i: int) -> int:
    """r_i for i >= 1: with i = 2^a (2b + 1), the (a+1)-th prime.

    Every prime p = nth_prime(a+1) recurs at each i = 2^a * odd.
    """
    if i < 1:
        raise ValueError("r is indexed from 1")
    a = (i & -i).bit_length() - 1
    return nth_prime(a + 1)


@dataclass(frozen=True)
class SearchRecord:
    """One Dirichlet scan: which entry it produced and the class it scanned."""

    kind: str                  # "q" or "P"
    i: int                     # stage for q; row for P
    j: int = 0
    k: int = 0                 # position of the prime inside P[i, j]
    generator: int = 0         # unit of (Z/a_i)^x targeted (P only)
    scan: ScanRecord = None


@dataclass(frozen=True)
class PrimeSequence:
    stages: int
    a: tuple
    q: dict                    # k -> q_k, k = 1..stages
    r: dict                    # k -> r_k, k = 1..stages
    P: dict                    # (i, j) -> tuple of primes, i + j <= stages
    generators: dict = field(default_factory=dict)   # i -> greedy generators mod a_i
    provenance: tuple = ()

    def column(self, i: int, j: int) -> tuple:
        return self.P[(i, j)]

    def is_built(self, i: int, j: int) -> bool:
        return i >= 0 and j >= 0 and i + j <= self.stages

    def all_P_primes(self) -> list[int]:
        return sorted(p for col in self.P.values() for p in col)

    def known_primes(self) -> set[int]:
        """Every prime the construction has touched; used as factoring hints."""
        out = {2, 3}
        out.update(self.q.values())
        out.update(self.r.values())
        out.update(self.all_P_primes())
        return out

    def a_factorization(self, i: int) -> dict[int, int]:
        f = {3: 1}
        for k in range(1, i + 1):
            for p in (self.q[k], self.r[k]):
                f[p] = f.get(p, 0) + 1
        return dict(sorted(f.items()))


def empty_sequence() -> PrimeSequence:
    return PrimeSequence(stages=-1, a=(), q={}, r={}, P={})


def _greedy_generators(seq_a, i, factorization, hints):
    return tuple(unit_group_generators(seq_a[i], factorization, hints))


def extend_sequence(seq: PrimeSequence, stages: int,
                    ceiling: int = DEFAULT_SCAN_CEILING) -> PrimeSequence:
    """Build stages seq.stages + 1 .. stages on top of seq (earlier entries untouched)."""
    a = list(seq.a)
    q = dict(seq.q)
    r = dict(seq.r)
    P = dict(seq.P)
    gens = dict(seq.generators)
    prov = list(seq.provenance)
    placed = set(p for col in P.values() for p in col)

    for s in range(seq.stages + 1, stages + 1):
        if s == 0:
            a.append(3)
        else:
            modulus = 4
            for (i, j), col in P.items():
                if i + j < s:
                    for p in col:
                        modulus *= p
            for ai in a[:s]:
                modulus *= ai
            rec = dirichlet_scan(1, modulus, 0, ceiling)
            q[s] = rec.result
            r[s] = r_enumeration(s)
            a.append(a[s - 1] * q[s] * r[s])
            prov.append(SearchRecord("q", s, scan=rec))
            log.info("stage %d: q=%d r=%d (%d candidates)", s, q[s], r[s], rec.scanned)

        view = PrimeSequence(s, tuple(a), q, r, P)
        hints = view.known_primes()
        for i in range(s + 1):
            j = s - i
            if i not in gens:
                gens[i] = _greedy_generators(a, i, view.a_factorization(i), hints)
            qprod = 1
            for k in range(i + 1, s + 1):
                qprod *= q[k]
            column = []
            for k, g in enumerate(gens[i]):
                cong = crt_combine([Congruence.of(1, qprod), Congruence.of(g, a[i])])
                # strictly above every prime placed so far; 4 keeps P-primes >= 5
                lower = max([4, *placed, *q.values()])
                rec = dirichlet_scan(cong.residue, cong.modulus, lower, ceiling)
                column.append(rec.result)
                placed.add(rec.result)
                prov.append(SearchRecord("P", i, j, k, g, rec))
            P[(i, j)] = tuple(column)
    return PrimeSequence(stages=max(stages, seq.stages), a=tuple(a), q=q, r=r, P=P,
                         generators=gens, provenance=tuple(prov))


@lru_cache(maxsize=8)
def _build_cached(stages: int, ceiling: int) -> PrimeSequence:
    return extend_sequence(empty_sequence(), stages, ceiling)


def build_sequence(stages: int, ceiling: int = DEFAULT_SCAN_CEILING,
                   allow_large: bool = False) -> PrimeSequence:
    if stages < 0:
        raise ValueError("stages must be >= 0")
    if stages > DEFAULT_STAGE_CAP and not allow_large:
        raise ValueError(
            f"{stages} stages exceeds the cap of {DEFAULT_STAGE_CAP}; a_i grows "
            "super-exponentially (pass allow_large=True to override)")
    return _build_cached(stages, ceiling)
