"""Random quantifier tables and small brute-force oracles shared by the tests."""
from __future__ import annotations

import random
from math import gcd

from cancelgroups.reduction import QuantifierTable2, QuantifierTable4


def _fill_slice(rng, entries, i, j, U, V):
    for u in range(U + 1):
        entries.add((i, j, u, rng.randint(0, V)))


def _noise(rng, entries, i, j, U, V, density=0.3):
    for u in range(U + 1):
        for v in range(V + 1):
            if rng.random() < density:
                entries.add((i, j, u, v))


def random_table4(rng: random.Random, kind: str, max_stage: int = 2) -> QuantifierTable4:
    """A table whose flag pattern is Total (every row flagged) or Cutoff
    (some row i* >= 1 without flags).  (0, 0) is always flagged."""
    if kind not in ("total", "cutoff"):
        raise ValueError(kind)
    low = 1 if kind == "cutoff" else 0
    I = rng.randint(low, max_stage)
    J = rng.randint(0, max_stage - I)
    U, V = rng.randint(0, 2), rng.randint(0, 2)
    i_star = rng.randint(1, I) if kind == "cutoff" else None
    entries, flags = set(), {(0, 0)}
    for i in range(I + 1):
        if i == i_star:
            row_flags = set()
        else:
            row_flags = {j for j in range(J + 1) if rng.random() < 0.4}
            if i == 0:
                row_flags.add(0)
            if not row_flags and (i_star is None or i < i_star):
                row_flags.add(rng.randint(0, J))
        for j in range(J + 1):
            if j in row_flags:
                flags.add((i, j))
                _fill_slice(rng, entries, i, j, U, V)
            else:
                _noise(rng, entries, i, j, U, V)
    return QuantifierTable4(I, J, U, V, frozenset(entries), frozenset(flags), kind)


def random_table2(rng: random.Random, max_stage: int = 2) -> QuantifierTable2:
    I = rng.randint(0, max_stage)
    J = rng.randint(0, max_stage - I)
    entries = {(i, j) for i in range(I + 1) for j in range(J + 1) if rng.random() < 0.5}
    return QuantifierTable2(I, J, frozenset(entries), "random")


def brute_residues(q: int) -> set:
    return {x * x % q for x in range(1, q)}


def divisors_from(factors: dict, rng: random.Random) -> int:
    d = 1
    for p, e in factors.items():
        d *= p ** rng.randint(0, e)
    return d


def coprime_to(n: int, avoid, rng: random.Random, hi: int = 10**6) -> int:
    while True:
        x = rng.randint(1, hi)
        if gcd(x, n) == 1 and all(x % p for p in avoid):
            return x
