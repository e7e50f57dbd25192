"""Desk-scale reductions from bounded quantifier tables.

A 4-quantifier table describes R(x; i', j', u, v) for indices within its
bounds.  The unbounded (forall u)(exists v) is represented by ``total_flags``:
a flag on (i', j') asserts the condition for every u, beyond U_max too.  A
flag is only accepted when the bounded slice (forall u <= U_max)(exists v <=
V_max) R actually holds, so the assertion is checkable in one direction.

A 2-quantifier table describes S(x; i, j) for the ring reduction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .descriptions import ColumnUnion, Cutoff, Total
from .errors import InvariantViolation, ParseError, StageNotBuilt
from .rank1 import INF, Rank1Group
from .stablerange import is_cancellable


def _check_index(name, idx, bounds):
    for x, b in zip(idx, bounds):
        if not 0 <= x <= b:
            raise InvariantViolation("bounds", f"{name} entry {idx} outside bounds {bounds}")


@dataclass(frozen=True)
class QuantifierTable4:
    I_max: int
    J_max: int
    U_max: int
    V_max: int
    entries: frozenset = frozenset()      # (i', j', u, v) where R holds
    total_flags: frozenset = frozenset()  # (i', j') with (forall u)(exists v) R
    label: str = ""

    def __post_init__(self):
        bounds = (self.I_max, self.J_max, self.U_max, self.V_max)
        if min(bounds) < 0:
            raise InvariantViolation("bounds", "bounds must be non-negative")
        entries = frozenset(tuple(e) for e in self.entries)
        flags = frozenset(tuple(f) for f in self.total_flags)
        for e in entries:
            _check_index("R", e, bounds)
        for f in flags:
            _check_index("flag", f, bounds[:2])
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "total_flags", flags)
        for i, j in sorted(flags):
            if self.slice_depth(i, j) < self.U_max:
                raise InvariantViolation(
                    "total_flags", f"flag on ({i},{j}) but the bounded slice fails at "
                    f"u = {self.slice_depth(i, j) + 1}")

    def R(self, i, j, u, v) -> bool:
        return (i, j, u, v) in self.entries

    def slice_depth(self, i, j) -> int:
        """Largest m <= U_max with (forall u <= m)(exists v <= V_max) R, or -1."""
        m = -1
        for u in range(self.U_max + 1):
            if not any((i, j, u, v) in self.entries for v in range(self.V_max + 1)):
                break
            m = u
        return m

    def depth(self, i, j):
        """slice_depth promoted to infinity on flagged pairs; -1 outside the table."""
        if i > self.I_max or j > self.J_max:
            return -1
        if (i, j) in self.total_flags:
            return INF
        return self.slice_depth(i, j)

    def least_flag(self, i):
        """The least j' with a total flag on (i, j'), or None."""
        return next((j for j in range(self.J_max + 1) if (i, j) in self.total_flags), None)


@dataclass(frozen=True)
class QuantifierTable2:
    I_max: int
    J_max: int
    entries: frozenset = frozenset()      # (i, j) where S holds
    label: str = ""

    def __post_init__(self):
        if min(self.I_max, self.J_max) < 0:
            raise InvariantViolation("bounds", "bounds must be non-negative")
        entries = frozenset(tuple(e) for e in self.entries)
        for e in entries:
            _check_index("S", e, (self.I_max, self.J_max))
        object.__setattr__(self, "entries", entries)

    def S(self, i, j) -> bool:
        return (i, j) in self.entries

    def least_witness(self, i):
        return next((j for j in range(self.J_max + 1) if (i, j) in self.entries), None)


# the group reduction -----------------------------------------------------------

def _require_stages(I_max, J_max, seq):
    if seq.stages < I_max + J_max:
        raise StageNotBuilt(I_max + J_max, f"the table needs columns up to i + j = {I_max + J_max}")


def check_remark(table: QuantifierTable4, strict: bool = False) -> None:
    """Reject tables whose group would be Z.

    The weak form (used by build_group and characterize_M) rejects a table
    whose row 0 is empty with no flag on (0, 0).  The strict form, needed to
    apply the cancellation criterion, demands the flag on (0, 0).
    """
    flagged = (0, 0) in table.total_flags
    if strict and not flagged:
        raise InvariantViolation(
            "remark", "total flag on (0,0) is required so that G(x) is not Z; normalize "
            "the table by making (forall u)(exists v) R hold at (0,0)")
    row0 = any(e[0] == 0 for e in table.entries)
    if not flagged and not row0:
        raise InvariantViolation(
            "remark", "row 0 is entirely false and (0,0) is not flagged; normalize the table "
            "so that (forall u)(exists v) R holds at (0,0)")


def bounded_condition(table: QuantifierTable4, i, j, m) -> bool:
    """(forall i' <= i)(exists j' <= j)(forall u <= m)(exists v <= V_max) R, evaluated
    straight from the entries; flags extend u beyond U_max."""
    for i2 in range(i + 1):
        ok = False
        for j2 in range(j + 1):
            if (i2, j2) in table.total_flags:
                ok = True
            elif m <= table.U_max and i2 <= table.I_max and j2 <= table.J_max:
                ok = all(any(table.R(i2, j2, u, v) for v in range(table.V_max + 1))
                         for u in range(m + 1))
            if ok:
                break
        if not ok:
            return False
    return True


def column_height(table: QuantifierTable4, i, j):
    """Height given to the primes of P[i, j]: the largest m for which the
    bounded condition holds, infinity when every witness is flagged."""
    h = INF
    for i2 in range(i + 1):
        best = max(table.depth(i2, j2) for j2 in range(j + 1))
        h = min(h, best)
    return max(0, h) if h != INF else INF


def build_group(table: QuantifierTable4, seq) -> Rank1Group:
    check_remark(table)
    _require_stages(table.I_max, table.J_max, seq)
    heights = {}
    for (i, j), col in seq.P.items():
        h = column_height(table, i, j)
        for p in col:
            heights[p] = h
    return Rank1Group(heights, table.label)


def characterize_M(table: QuantifierTable4, seq) -> ColumnUnion:
    """The primes of infinite height, as a column union read off the flags."""
    check_remark(table)
    _require_stages(table.I_max, table.J_max, seq)
    j_of_i = []
    for i in range(table.I_max + 1):
        j = table.least_flag(i)
        if j is None:
            return ColumnUnion(seq, Cutoff(i, tuple(j_of_i)))
        j_of_i.append(j)
    return ColumnUnion(seq, Total(tuple(j_of_i)))


def classify(table: QuantifierTable4, seq):
    """Cancellability of G(x): Yes exactly for Total tables, No for Cutoff ones."""
    check_remark(table, strict=True)
    desc = characterize_M(table, seq)
    return is_cancellable(desc, non_Z=True)


# the ring reduction --------------------------------------------------------------

@dataclass
class RingReport:
    description: ColumnUnion
    membership: dict = field(default_factory=dict)   # (i, j) -> column inside M_x
    agrees: bool = True

    def lines(self):
        out = [f"description: {self.description}",
               "per-column membership of P[i,j] in M_x (finite table lookup):"]
        for (i, j), inside in sorted(self.membership.items()):
            out.append(f"  P[{i},{j}]: {'in' if inside else 'out'}")
        out.append("lookup agrees with description: " + ("yes" if self.agrees else "NO"))
        return out


def _ring_lookup(table: QuantifierTable2, i, j) -> bool:
    if i > table.I_max:
        return False
    return all(any(table.S(i2, j2) for j2 in range(min(j, table.J_max) + 1))
               for i2 in range(i + 1))


def build_ring(table: QuantifierTable2, seq) -> RingReport:
    _require_stages(table.I_max, table.J_max, seq)
    j_of_i = []
    desc = None
    for i in range(table.I_max + 1):
        j = table.least_witness(i)
        if j is None:
            desc = ColumnUnion(seq, Cutoff(i, tuple(j_of_i)))
            break
        j_of_i.append(j)
    if desc is None:
        desc = ColumnUnion(seq, Total(tuple(j_of_i)))
    report = RingReport(desc)
    for (i, j) in sorted(seq.P):
        inside = _ring_lookup(table, i, j)
        report.membership[(i, j)] = inside
        if inside != desc.includes_column(i, j):
            report.agrees = False
    return report


# table files ---------------------------------------------------------------------

def _parse_table(text, path, magic, nbounds, entry_key, width):
    lines = [(n, raw.split("#", 1)[0].split()) for n, raw in enumerate(text.splitlines(), 1)]
    lines = [(n, t) for n, t in lines if t]
    if not lines or lines[0][1] != [magic, "v1"]:
        raise ParseError(f"first line must be '{magic} v1'", lines[0][0] if lines else None, path)
    label, bounds, entries, flags = "", None, set(), set()
    for n, tok in lines[1:]:
        key, rest = tok[0], tok[1:]
        if key == "label":
            label = " ".join(rest)
            continue
        try:
            nums = [int(t) for t in rest]
        except ValueError:
            raise ParseError("expected integers", n, path) from None
        if key == "bounds":
            if len(nums) != nbounds:
                raise ParseError(f"bounds takes {nbounds} integers", n, path)
            bounds = nums
        elif key == entry_key and len(nums) == width:
            entries.add(tuple(nums))
        elif key == "flag" and magic == "table4" and len(nums) == 2:
            flags.add(tuple(nums))
        else:
            raise ParseError(f"unexpected line {' '.join(tok)!r}", n, path)
    if bounds is None:
        raise ParseError("missing bounds line", None, path)
    return label, bounds, entries, flags


def parse_table4(text: str, path=None) -> QuantifierTable4:
    """``table4 v1``, ``label X``, ``bounds I J U V``, then ``flag i j`` and
    sparse ``R i j u v`` lines for the true entries."""
    label, b, entries, flags = _parse_table(text, path, "table4", 4, "R", 4)
    return QuantifierTable4(*b, frozenset(entries), frozenset(flags), label)


def parse_table2(text: str, path=None) -> QuantifierTable2:
    """``table2 v1``, ``label X``, ``bounds I J``, then sparse ``S i j`` lines."""
    label, b, entries, _ = _parse_table(text, path, "table2", 2, "S", 2)
    return QuantifierTable2(*b, frozenset(entries), label)


def format_table4(t: QuantifierTable4) -> str:
    lines = ["table4 v1"]
    if t.label:
        lines.append(f"label {t.label}")
    lines.append(f"bounds {t.I_max} {t.J_max} {t.U_max} {t.V_max}")
    lines += [f"flag {i} {j}" for i, j in sorted(t.total_flags)]
    lines += ["R " + " ".join(map(str, e)) for e in sorted(t.entries)]
    return "\n".join(lines) + "\n"


def format_table2(t: QuantifierTable2) -> str:
    lines = ["table2 v1"]
    if t.label:
        lines.append(f"label {t.label}")
    lines.append(f"bounds {t.I_max} {t.J_max}")
    lines += ["S " + " ".join(map(str, e)) for e in sorted(t.entries)]
    return "\n".join(lines) + "\n"


def load_table(path):
    """Either kind of table, chosen by its first line."""
    with open(path) as fh:
        text = fh.read()
    first = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if first == "table4":
        return parse_table4(text, path)
    if first == "table2":
        return parse_table2(text, path)
    raise ParseError("not a quantifier table (expected 'table4 v1' or 'table2 v1')", 1, path)


def is_total(table) -> bool:
    """Whether every row has a witness: flags for table4, true entries for table2."""
    if isinstance(table, QuantifierTable4):
        return all(table.least_flag(i) is not None for i in range(table.I_max + 1))
    return all(table.least_witness(i) is not None for i in range(table.I_max + 1))


__all__ = [
    "QuantifierTable2", "QuantifierTable4", "RingReport", "bounded_condition", "build_group",
    "build_ring", "characterize_M", "check_remark", "classify", "column_height",
    "format_table2", "format_table4", "is_total", "load_table", "parse_table2", "parse_table4",
]
