"""Cancellation and stable-range-1 machinery for torsion-free abelian groups."""

__version__ = "0.1.0"
