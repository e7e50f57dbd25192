"""Primality, prime enumeration and ascending scans over progressions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import factorint as _factorint
from sympy import isprime as _isprime
from sympy import prime as _nth_prime

from ..errors import ResourceError

DEFAULT_SCAN_CEILING = 10**7


def is_prime(n: int) -> bool:
    # sympy: deterministic Miller-Rabin below 2**64, strong BPSW above.
    return n >= 2 and bool(_isprime(n))


def require_prime(n: int, what: str = "value") -> int:
    if not isinstance(n, int) or not is_prime(n):
        raise ValueError(f"{what} must be prime, got {n!r}")
    return n


@lru_cache(maxsize=None)
def nth_prime(k: int) -> int:
    """The k-th prime, 1-based: nth_prime(1) == 2."""
    if k < 1:
        raise ValueError("prime index is 1-based")
    return int(_nth_prime(k))


def primes_from(start: int):
    """Yield the primes >= start in ascending order, forever."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


@dataclass(frozen=True)
class ScanRecord:
    """Provenance of one ascending scan of a residue class for a prime."""

    residue: int
    modulus: int
    lower_bound: int
    result: int
    scanned: int


def dirichlet_scan(a: int, d: int, lower_bound: int = 0,
                   ceiling: int = DEFAULT_SCAN_CEILING) -> ScanRecord:
    if d < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, d) != 1:
        raise ValueError(f"gcd({a}, {d}) != 1: the class {a} mod {d} holds at most one prime")
    a %= d
    # first candidate strictly above lower_bound
    c = lower_bound + 1 + (a - lower_bound - 1) % d
    for scanned in range(1, ceiling + 1):
        if is_prime(c):
            return ScanRecord(a, d, lower_bound, c, scanned)
        c += d
    raise ResourceError(
        f"no prime = {a} (mod {d}) above {lower_bound} within {ceiling} candidates")


def dirichlet_search(a: int, d: int, lower_bound: int = 0,
                     ceiling: int = DEFAULT_SCAN_CEILING) -> int:
    """Smallest prime p > lower_bound with p = a (mod d)."""
    return dirichlet_scan(a, d, lower_bound, ceiling).result


def factorize(n: int, hints=()) -> dict[int, int]:
    """Prime factorization of n > 0.

    `hints` are primes that probably divide n; dividing them out first keeps
    the residual cofactor small when n is a product of large known primes.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    for p in sorted(set(hints)):
        if p < 2:
            continue
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    if n > 1:
        for p, e in _factorint(n).items():
            out[int(p)] = out.get(int(p), 0) + int(e)
    return dict(sorted(out.items()))
