"""Finite truncations of the tree group H_T and their exact verification."""
from ..lattice import FullRankLattice, Lattice, hermite_normal_form, intersect
from ..lattice import member as lattice_member
from .alloc import T_PRIME, PrimeAllocation, allocate_primes, family_order, needed_tags
from .decomposition import (FAMILIES, DecompositionReport, GeneratorCheck, classify_term,
                            identity_terms, verify_decomposition)
from .elements import X, XNode, Y, Z, BasisSym, GroupElement, elem
from .generators import (Generator, GeneratorSet, enumerate_generators, truncation_basis,
                         uses_allocated_primes)
from .grouplattice import (GroupLattice, brute_force_member, contains, divisibility_height,
                           lattice_of, member)
from .probe import (ProbeResult, default_window, family_preset, in_rational_span,
                    pure_component_probe, window_elements)
from .tree import (TreeT, Truncation, cantor, format_tree, load_tree, node_str, parse_path,
                   parse_tree, seq_code, tag_code)

__all__ = [
    "BasisSym", "DecompositionReport", "FAMILIES", "FullRankLattice", "Generator",
    "GeneratorCheck", "GeneratorSet", "GroupElement", "GroupLattice", "Lattice",
    "PrimeAllocation", "ProbeResult", "T_PRIME", "TreeT", "Truncation", "X", "XNode",
    "Y", "Z", "allocate_primes", "brute_force_member", "cantor", "classify_term",
    "contains", "default_window", "divisibility_height", "elem", "enumerate_generators",
    "family_order", "family_preset", "format_tree", "hermite_normal_form",
    "identity_terms", "in_rational_span", "intersect", "lattice_member", "lattice_of",
    "load_tree", "member", "needed_tags", "node_str", "parse_path", "parse_tree",
    "pure_component_probe", "seq_code", "tag_code", "truncation_basis",
    "uses_allocated_primes", "verify_decomposition", "window_elements",
]
