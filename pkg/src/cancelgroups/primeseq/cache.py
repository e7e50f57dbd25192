"""Versioned text cache for PrimeSequence.

Layout (one record per line, integers in unbounded decimal)::

    cancelgroups-primeseq 1
    stages S
    a I VALUE
    q K VALUE
    r K VALUE
    P I J PRIME PRIME ...
    gen I G G ...
    scanq S RESIDUE MODULUS LOWER RESULT SCANNED
    scanP I J K GENERATOR RESIDUE MODULUS LOWER RESULT SCANNED
    checksum sha256 HEX

The checksum covers every byte before the checksum line.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from ..errors import CacheError
from ..ntheory import ScanRecord
from .sequence import PrimeSequence, SearchRecord
from .verify import verify_invariants

MAGIC = "cancelgroups-primeseq"
VERSION = 1


def dumps(seq: PrimeSequence) -> str:
    lines = [f"{MAGIC} {VERSION}", f"stages {seq.stages}"]
    lines += [f"a {i} {v}" for i, v in enumerate(seq.a)]
    lines += [f"q {k} {seq.q[k]}" for k in sorted(seq.q)]
    lines += [f"r {k} {seq.r[k]}" for k in sorted(seq.r)]
    for (i, j) in sorted(seq.P):
        lines.append(" ".join(["P", str(i), str(j), *map(str, seq.P[(i, j)])]))
    for i in sorted(seq.generators):
        lines.append(" ".join(["gen", str(i), *map(str, seq.generators[i])]))
    for rec in seq.provenance:
        sc = rec.scan
        tail = f"{sc.residue} {sc.modulus} {sc.lower_bound} {sc.result} {sc.scanned}"
        if rec.kind == "q":
            lines.append(f"scanq {rec.i} {tail}")
        else:
            lines.append(f"scanP {rec.i} {rec.j} {rec.k} {rec.generator} {tail}")
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"checksum sha256 {digest}\n"


def _checksum_status(text: str):
    """(body, problem) where problem is None when the checksum matches."""
    body, sep, last = text.rstrip("\n").rpartition("\n")
    parts = last.split()
    if not sep or len(parts) != 3 or parts[:2] != ["checksum", "sha256"]:
        return text.rstrip("\n"), "checksum line missing: file truncated or corrupt"
    if hashlib.sha256((body + "\n").encode()).hexdigest() != parts[2]:
        return body, "checksum mismatch: file truncated or corrupt"
    return body, None


def _check_header(text: str):
    if not text.startswith(MAGIC + " "):
        raise CacheError("not a prime-sequence cache file")
    head = text.split("\n", 1)[0].split()
    if len(head) != 2 or head[1] != str(VERSION):
        raise CacheError(f"cache version {head[1:]} is not supported (expected {VERSION})")


def loads(text: str, verify: bool = True) -> PrimeSequence:
    _check_header(text)
    body, problem = _checksum_status(text)
    if problem:
        raise CacheError(problem)
    seq = _parse_body(body)
    if verify:
        report = verify_invariants(seq, provenance=True)
        if not report.ok:
            bad = report.failing()[0]
            raise CacheError(f"cached sequence fails clause {bad.clause}: {bad.counterexample}")
    return seq


def audit_text(text: str):
    """(sequence, checksum problem or None) without rejecting a bad checksum,
    so a tampered file can still be checked clause by clause."""
    _check_header(text)
    body, problem = _checksum_status(text)
    return _parse_body(body), problem


def _parse_body(body: str) -> PrimeSequence:
    stages = None
    a, q, r, P, gens, prov = {}, {}, {}, {}, {}, []
    try:
        for line in body.split("\n")[1:]:
            tok = line.split()
            if not tok:
                raise CacheError("blank record")
            kind, nums = tok[0], [int(t) for t in tok[1:]]
            if kind == "stages":
                stages = nums[0]
            elif kind == "a":
                a[nums[0]] = nums[1]
            elif kind == "q":
                q[nums[0]] = nums[1]
            elif kind == "r":
                r[nums[0]] = nums[1]
            elif kind == "P":
                P[(nums[0], nums[1])] = tuple(nums[2:])
            elif kind == "gen":
                gens[nums[0]] = tuple(nums[1:])
            elif kind == "scanq":
                prov.append(SearchRecord("q", nums[0], scan=ScanRecord(*nums[1:6])))
            elif kind == "scanP":
                i, j, k, g = nums[:4]
                prov.append(SearchRecord("P", i, j, k, g, ScanRecord(*nums[4:9])))
            else:
                raise CacheError(f"unknown record kind {kind!r}")
    except (IndexError, ValueError) as exc:
        raise CacheError(f"malformed record: {exc}") from exc
    if stages is None or sorted(a) != list(range(stages + 1)):
        raise CacheError("cache is missing stage records")
    return PrimeSequence(stages=stages, a=tuple(a[i] for i in range(stages + 1)), q=q, r=r,
                         P=P, generators=gens, provenance=tuple(prov))


def cache_save(seq: PrimeSequence, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # write-then-rename keeps concurrent readers from seeing a partial file
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    with os.fdopen(fd, "w") as fh:
        fh.write(dumps(seq))
    os.replace(tmp, path)


def cache_load(path, verify: bool = True) -> PrimeSequence:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    return loads(text, verify)
