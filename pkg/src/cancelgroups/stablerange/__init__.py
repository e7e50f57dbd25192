"""Stable range 1 for localizations of Z, and cancellation of rank-1 groups."""
from ..descriptions import Cofinite, ColumnUnion, Cutoff, Finite, PrimeSetDescription, Total
from .fileio import format_description, format_verdict, load_description, parse_description
from .procedures import (DEFAULT_OBSTRUCTION_BOUND, check_certificate, find_obstruction,
                         has_one_in_stable_range, is_cancellable, reciprocity_obstruction,
                         solve_unit, stage_needed_for)
from .verdicts import (NO, UNKNOWN, YES, CancellationVerdict, ClosedForm, Obstruction, Probe,
                       StableRangeVerdict, UnitRecipe, UnitWord)

__all__ = [
    "CancellationVerdict", "ClosedForm", "Cofinite", "ColumnUnion", "Cutoff",
    "DEFAULT_OBSTRUCTION_BOUND", "Finite", "NO", "Obstruction", "PrimeSetDescription", "Probe",
    "StableRangeVerdict", "Total", "UNKNOWN", "UnitRecipe", "UnitWord", "YES",
    "check_certificate", "find_obstruction", "format_description", "format_verdict",
    "has_one_in_stable_range", "is_cancellable", "load_description", "parse_description",
    "reciprocity_obstruction",
    "solve_unit", "stage_needed_for",
]
