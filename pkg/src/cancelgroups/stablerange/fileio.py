"""Text formats: prime-set description files and verdict reports.

A description file is a ``kind`` line followed by payload lines::

    kind finite            kind cofinite          kind columns
    primes 5 7             excluded 2 3           stages 2          (or: cache PATH)
                                                  rule cutoff       (or: rule total)
                                                  i_star 1
                                                  j_of_i 0

Blank lines and ``#`` comments are ignored.  A relative cache path is taken
relative to the description file.
"""
from __future__ import annotations

from pathlib import Path

from ..descriptions import Cofinite, ColumnUnion, Cutoff, Finite, Total
from ..errors import ParseError
from ..primeseq import build_sequence, cache_load
from .verdicts import (CancellationVerdict, ClosedForm, Obstruction, StableRangeVerdict,
                       UnitRecipe)

_KEYS = {
    "finite": {"primes"},
    "cofinite": {"excluded"},
    "columns": {"stages", "cache", "rule", "i_star", "j_of_i"},
}


def _ints(tok, lineno, path):
    try:
        return [int(t) for t in tok]
    except ValueError as exc:
        raise ParseError(f"expected integers: {exc}", lineno, path) from None


def parse_description(text: str, path=None, loader=None, allow_large: bool = False):
    """Parse a description.  ``loader(stages)`` overrides how a ``stages N``
    column union obtains its sequence (the CLI routes it through its cache)."""
    kind = None
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "kind":
            if kind is not None:
                raise ParseError("kind given twice", lineno, path)
            if len(rest) != 1 or rest[0] not in _KEYS:
                raise ParseError("kind must be finite, cofinite or columns", lineno, path)
            kind = rest[0]
            continue
        if kind is None:
            raise ParseError("the first line must be 'kind ...'", lineno, path)
        if key not in _KEYS[kind]:
            raise ParseError(f"unexpected key {key!r} for kind {kind}", lineno, path)
        if key in fields:
            raise ParseError(f"{key} given twice", lineno, path)
        fields[key] = (rest, lineno)
    if kind is None:
        raise ParseError("empty description", None, path)

    if kind in ("finite", "cofinite"):
        key, cls = ("primes", Finite) if kind == "finite" else ("excluded", Cofinite)
        rest, ln = fields.get(key, ([], None))
        try:
            return cls(_ints(rest, ln, path))
        except ValueError as exc:
            raise ParseError(str(exc), ln, path) from None

    if "rule" not in fields:
        raise ParseError("columns description needs a rule line", None, path)
    (rule_tok, ln) = fields["rule"]
    if rule_tok not in (["total"], ["cutoff"]):
        raise ParseError("rule must be total or cutoff", ln, path)
    j_tok, j_ln = fields.get("j_of_i", ([], None))
    j_of_i = _ints(j_tok, j_ln, path)
    try:
        if rule_tok == ["total"]:
            rule = Total(tuple(j_of_i))
        else:
            if "i_star" not in fields:
                raise ParseError("cutoff rule needs i_star", ln, path)
            i_tok, i_ln = fields["i_star"]
            vals = _ints(i_tok, i_ln, path)
            if len(vals) != 1:
                raise ParseError("i_star takes one integer", i_ln, path)
            rule = Cutoff(vals[0], tuple(j_of_i))
    except ValueError as exc:
        raise ParseError(str(exc), ln, path) from None

    if ("stages" in fields) == ("cache" in fields):
        raise ParseError("columns description needs exactly one of 'stages N' or 'cache PATH'",
                         None, path)
    if "cache" in fields:
        rest, c_ln = fields["cache"]
        if len(rest) != 1:
            raise ParseError("cache takes one path", c_ln, path)
        cpath = Path(rest[0])
        if not cpath.is_absolute() and path is not None:
            cpath = Path(path).parent / cpath
        seq = cache_load(cpath)
    else:
        rest, s_ln = fields["stages"]
        vals = _ints(rest, s_ln, path)
        if len(vals) != 1 or vals[0] < 0:
            raise ParseError("stages takes one non-negative integer", s_ln, path)
        try:
            seq = loader(vals[0]) if loader else build_sequence(vals[0], allow_large=allow_large)
        except ValueError as exc:
            raise ParseError(str(exc), s_ln, path) from None
    return ColumnUnion(seq, rule)


def load_description(path, loader=None, allow_large: bool = False):
    with open(path) as fh:
        return parse_description(fh.read(), path, loader, allow_large)


def format_description(desc, cache_ref: str | None = None) -> str:
    if isinstance(desc, Finite):
        return "kind finite\nprimes " + " ".join(map(str, sorted(desc.primes))) + "\n"
    if isinstance(desc, Cofinite):
        return "kind cofinite\nexcluded " + " ".join(map(str, sorted(desc.excluded))) + "\n"
    lines = ["kind columns"]
    lines.append(f"cache {cache_ref}" if cache_ref else f"stages {desc.seq.stages}")
    if isinstance(desc.rule, Total):
        lines.append("rule total")
    else:
        lines += ["rule cutoff", f"i_star {desc.rule.i_star}"]
    lines.append("j_of_i " + " ".join(map(str, desc.rule.j_of_i)))
    return "\n".join(lines) + "\n"


# reports -----------------------------------------------------------------------

def _certificate_lines(cert):
    if cert is None:
        return []
    if isinstance(cert, ClosedForm):
        return [f"certificate: closed form ({cert.case})", f"  {cert.note}"]
    if isinstance(cert, Obstruction):
        out = ["certificate: obstruction",
               f"  alpha1 = {cert.alpha1}",
               f"  alpha2 = {cert.alpha2}",
               f"  method = {cert.method}"]
        if cert.method == "subgroup":
            out.append("  H generated mod alpha2 by: "
                       + (" ".join(map(str, cert.generators)) or "(nothing)"))
            if cert.subgroup_order:
                out.append(f"  |H| = {cert.subgroup_order}")
            out.append(f"  alpha1 mod alpha2 = {cert.alpha1 % cert.alpha2} lies outside H")
        else:
            out.append("  alpha2 is a prime = 1 mod 4; every inverted prime is a quadratic "
                       "residue mod alpha2 and alpha1 is not")
        return out
    if isinstance(cert, UnitRecipe):
        out = ["certificate: unit recipe"]
        for i, j, col in cert.columns:
            out.append(f"  row {i}: column P[{i},{j}] = {' '.join(map(str, col))} "
                       f"generates the units mod a_{i}")
        for pr in cert.probes:
            out.append(f"  probe alpha1={pr.alpha1} alpha2={pr.alpha2}: u = {pr.word} "
                       f"(u mod alpha2 = {pr.word.residue})")
        return out
    return [f"certificate: {cert!r}"]


def format_verdict(v) -> str:
    lines = []
    if isinstance(v, CancellationVerdict):
        lines += [f"cancellable: {v.verdict}", f"reason: {v.reason}"]
        lines += [f"note: {n}" for n in v.notes]
        v = v.stable_range
        if v is None:
            return "\n".join(lines) + "\n"
    if isinstance(v, StableRangeVerdict):
        lines.append(f"stable range 1: {v.verdict}")
        lines += _certificate_lines(v.certificate)
        if v.missing_stage is not None:
            lines.append(f"missing stage: {v.missing_stage}")
        if v.search_bound_used is not None:
            lines.append(f"search bound used: {v.search_bound_used}")
        lines += [f"note: {n}" for n in v.notes]
    return "\n".join(lines) + "\n"
