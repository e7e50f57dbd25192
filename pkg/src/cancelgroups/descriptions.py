"""Finite descriptions of (possibly infinite) sets of primes.

Three shapes are supported:

* ``Finite(primes)``: exactly the listed primes.
* ``Cofinite(excluded)``: every prime except the listed ones.
* ``ColumnUnion(seq, rule)``: a union of columns P[i, j] of a prime sequence,
  selected by a ``Total`` or ``Cutoff`` rule.

A rule carries ``j_of_i``, the least witness j for each covered row i.  Column
(i, j) is included when row i is covered and j >= max(j_of_i[0..i]); this is
the set of columns for which (for all i' <= i)(exists j' <= j) holds.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ntheory import require_prime


def _prime_set(values, what):
    out = frozenset(int(p) for p in values)
    for p in out:
        require_prime(p, what)
    return out


@dataclass(frozen=True)
class Finite:
    primes: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "primes", _prime_set(self.primes, "listed prime"))

    def contains_prime(self, p: int) -> bool:
        return p in self.primes

    def __str__(self):
        return "Finite{" + ", ".join(map(str, sorted(self.primes))) + "}"


@dataclass(frozen=True)
class Cofinite:
    excluded: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "excluded", _prime_set(self.excluded, "excluded prime"))

    def contains_prime(self, p: int) -> bool:
        return p not in self.excluded

    def __str__(self):
        return "Cofinite(all primes except {" + ", ".join(map(str, sorted(self.excluded))) + "})"


def _check_witnesses(j_of_i, name):
    out = tuple(int(j) for j in j_of_i)
    if any(j < 0 for j in out):
        raise ValueError(f"{name}: witnesses must be non-negative")
    return out


@dataclass(frozen=True)
class Total:
    """Every row 0..I_max has a witness; j_of_i has length I_max + 1."""

    j_of_i: tuple

    def __post_init__(self):
        object.__setattr__(self, "j_of_i", _check_witnesses(self.j_of_i, "Total"))
        if not self.j_of_i:
            raise ValueError("Total rule must cover at least row 0")

    @property
    def rows(self) -> int:
        return len(self.j_of_i)

    @property
    def i_max(self) -> int:
        return len(self.j_of_i) - 1

    def __str__(self):
        return f"Total(j_of_i={list(self.j_of_i)})"


@dataclass(frozen=True)
class Cutoff:
    """Rows below i_star have witnesses; row i_star has none."""

    i_star: int
    j_of_i: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "j_of_i", _check_witnesses(self.j_of_i, "Cutoff"))
        if self.i_star < 0:
            raise ValueError("i_star must be non-negative")
        if len(self.j_of_i) != self.i_star:
            raise ValueError(f"Cutoff rule needs exactly {self.i_star} witnesses, got {len(self.j_of_i)}")

    @property
    def rows(self) -> int:
        return self.i_star

    def __str__(self):
        return f"Cutoff(i_star={self.i_star}, j_of_i={list(self.j_of_i)})"


@dataclass(frozen=True, eq=False)
class ColumnUnion:
    seq: object          # PrimeSequence
    rule: object         # Total | Cutoff

    def __eq__(self, other):
        return (isinstance(other, ColumnUnion) and self.rule == other.rule
                and self.seq == other.seq)

    __hash__ = None

    def row_threshold(self, i: int) -> int:
        """The least j whose column (i, j) is included, for a covered row i."""
        if not 0 <= i < self.rule.rows:
            raise ValueError(f"row {i} is not covered by {self.rule}")
        return max(self.rule.j_of_i[: i + 1])

    def includes_column(self, i: int, j: int) -> bool:
        return 0 <= i < self.rule.rows and j >= self.row_threshold(i)

    def included_columns(self) -> list:
        return sorted(key for key in self.seq.P if self.includes_column(*key))

    def included_primes(self) -> list:
        return sorted(p for key in self.included_columns() for p in self.seq.P[key])

    def contains_prime(self, p: int) -> bool:
        return any(p in self.seq.P[key] for key in self.included_columns())

    def required_stage(self) -> int:
        """The sequence stage the verdict needs: every witnessing column for a
        Total rule, q_(i*) for a Cutoff rule."""
        if isinstance(self.rule, Total):
            return max(i + self.row_threshold(i) for i in range(self.rule.rows))
        return self.rule.i_star

    def is_consistent(self) -> bool:
        return self.required_stage() <= self.seq.stages

    def __str__(self):
        return f"ColumnUnion({self.rule}, stages built={self.seq.stages})"


PrimeSetDescription = (Finite, Cofinite, ColumnUnion)
