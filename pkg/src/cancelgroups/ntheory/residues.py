"""Quadratic residues, reciprocity and the Chinese remainder theorem."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .primes import is_prime


@dataclass(frozen=True)
class Congruence:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, residue: int, modulus: int) -> "Congruence":
        return cls(residue % modulus, modulus)

    def holds(self, x: int) -> bool:
        return x % self.modulus == self.residue

    def __str__(self):
        return f"x = {self.residue} (mod {self.modulus})"


def _check_odd_prime(q: int, name: str = "q") -> None:
    if q == 2 or not is_prime(q):
        raise ValueError(f"{name} must be an odd prime, got {q}")


def is_quadratic_residue(a: int, q: int) -> bool:
    """Euler's criterion: a^((q-1)/2) = 1 (mod q)."""
    _check_odd_prime(q)
    if a % q == 0:
        raise ValueError(f"{a} = 0 (mod {q}) has no residue status")
    return pow(a, (q - 1) // 2, q) == 1


def reciprocity_check(p: int, q: int) -> bool:
    """Whether the pair (p, q) obeys the law of quadratic reciprocity.

    Always true for distinct odd primes; exposed as a cross-check of
    `is_quadratic_residue`.
    """
    _check_odd_prime(p, "p")
    _check_odd_prime(q, "q")
    if p == q:
        raise ValueError("reciprocity needs distinct primes")
    p_mod_q = is_quadratic_residue(p, q)
    q_mod_p = is_quadratic_residue(q, p)
    if p % 4 == 3 and q % 4 == 3:
        return p_mod_q != q_mod_p
    return p_mod_q == q_mod_p


def crt_combine(congruences) -> Congruence:
    congruences = list(congruences)
    if not congruences:
        return Congruence(0, 1)
    for c1, c2 in combinations(congruences, 2):
        if gcd(c1.modulus, c2.modulus) != 1:
            raise ValueError(
                f"moduli {c1.modulus} and {c2.modulus} are not coprime "
                f"(gcd {gcd(c1.modulus, c2.modulus)})")
    x, m = 0, 1
    for c in congruences:
        # x + m*t = c.residue (mod c.modulus)
        t = (c.residue - x) * pow(m, -1, c.modulus) % c.modulus
        x += m * t
        m *= c.modulus
    return Congruence(x % m, m)
