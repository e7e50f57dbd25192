"""Exact modular and prime arithmetic."""
from .primes import (DEFAULT_SCAN_CEILING, ScanRecord, dirichlet_scan, dirichlet_search,
                     factorize, is_prime, nth_prime, primes_from, require_prime)
from .residues import Congruence, crt_combine, is_quadratic_residue, reciprocity_check
from .unitgroup import Subgroup, UnitGroup, subgroup_generated, unit_group_generators

__all__ = [
    "Congruence", "DEFAULT_SCAN_CEILING", "ScanRecord", "Subgroup", "UnitGroup",
    "crt_combine", "dirichlet_scan", "dirichlet_search", "factorize", "is_prime",
    "is_quadratic_residue", "nth_prime", "primes_from", "reciprocity_check",
    "require_prime", "subgroup_generated", "unit_group_generators",
]
