"""Construction, verification and caching of the special prime sequences."""
from .cache import audit_text, cache_load, cache_save, dumps, loads
from .sequence import (DEFAULT_STAGE_CAP, PrimeSequence, SearchRecord, build_sequence,
                       empty_sequence, extend_sequence, r_enumeration)
from .verify import ClauseResult, InvariantReport, verify_invariants, verify_provenance

__all__ = ["ClauseResult", "audit_text", "DEFAULT_STAGE_CAP", "InvariantReport", "PrimeSequence",
           "SearchRecord", "build_sequence", "cache_load", "cache_save", "dumps",
           "empty_sequence", "extend_sequence", "loads", "r_enumeration",
           "verify_invariants", "verify_provenance"]
