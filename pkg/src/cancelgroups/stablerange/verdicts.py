"""Verdict and certificate records for stable-range and cancellation questions."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ResourceError

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"

# words whose integer value would exceed this many bits are kept symbolic
MAX_WORD_BITS = 1 << 20


@dataclass(frozen=True)
class ClosedForm:
    """Yes for a localization inverting all but finitely many primes."""

    case: str
    note: str = ""


@dataclass(frozen=True)
class Obstruction:
    """alpha1 * m = m' (mod alpha2) has no solution with m, m' in +-M.

    ``method`` is "subgroup" (alpha1 lies outside the subgroup H generated by
    -1 and the primes of M modulo alpha2) or "quadratic" (alpha2 is a prime
    = 1 mod 4, every prime of M is a residue modulo it and alpha1 is not).
    """

    alpha1: int
    alpha2: int
    method: str
    generators: tuple = ()      # residues mod alpha2 generating H
    subgroup_order: int = 0


@dataclass(frozen=True)
class UnitWord:
    """u = prod(primes[k] ** exponents[k]), a member of M, with its residue."""

    primes: tuple
    exponents: tuple
    modulus: int

    @property
    def residue(self) -> int:
        out = 1 % self.modulus
        for p, e in zip(self.primes, self.exponents):
            out = out * pow(p, e, self.modulus) % self.modulus
        return out

    @property
    def bits(self) -> int:
        return sum(e * p.bit_length() for p, e in zip(self.primes, self.exponents))

    @property
    def value(self) -> int:
        if self.bits > MAX_WORD_BITS:
            raise ResourceError(f"unit word has about {self.bits} bits; use .residue or the exponents")
        out = 1
        for p, e in zip(self.primes, self.exponents):
            out *= p ** e
        return out

    def __int__(self):
        return self.value

    def __str__(self):
        parts = [f"{p}^{e}" if e != 1 else str(p)
                 for p, e in zip(self.primes, self.exponents) if e]
        return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class Probe:
    alpha1: int
    alpha2: int
    word: UnitWord


@dataclass(frozen=True)
class UnitRecipe:
    """How to solve alpha1 * u = 1 (mod alpha2) with u in M.

    For every covered row i the column (i, j) with j the row threshold is
    included in M, and its primes generate (Z/a_i)^x; any alpha2 dividing a_i
    is therefore solved by a word in that column.  ``probes`` are sample
    solutions that an auditor re-runs.
    """

    columns: tuple              # ((i, j, primes), ...)
    probes: tuple = ()


@dataclass(frozen=True)
class StableRangeVerdict:
    verdict: str
    certificate: object = None
    search_bound_used: int | None = None
    missing_stage: object = None
    notes: tuple = ()


@dataclass(frozen=True)
class CancellationVerdict:
    verdict: str
    reason: str
    stable_range: StableRangeVerdict | None = None
    notes: tuple = ()
