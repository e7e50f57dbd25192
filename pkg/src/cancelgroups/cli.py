"""Command-line front end: ``cancelgroups <area> <action> ...``.

Exit codes: 0 yes/pass, 1 no/fail (with certificate), 2 unknown or out of
resources, 3 usage or parse error.  ``CANCELGROUPS_CACHE`` names the cache
directory; ``--canonical`` drops timing lines so reports are byte-stable.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import (CacheError, CoverageError, InvariantViolation, ParseError, ResourceError,
                     StageNotBuilt)
from .primeseq import (DEFAULT_STAGE_CAP, audit_text, build_sequence, cache_load, cache_save,
                       verify_invariants)
from .rank1 import INF, endomorphism_ring, format_group, load_group
from .reduction import (QuantifierTable4, build_group, build_ring, characterize_M, classify,
                        load_table)
from .stablerange import (NO, UNKNOWN, YES, check_certificate, format_verdict,
                          has_one_in_stable_range, is_cancellable, load_description)
from .treegroup import (TreeT, Truncation, allocate_primes, default_window,
                        enumerate_generators, family_preset, load_tree, node_str, parse_path,
                        pure_component_probe, verify_decomposition)

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3
CACHE_ENV = "CANCELGROUPS_CACHE"
TREE_CAPS = {"S_max": 3, "I_max": 3, "K_max": 4, "W": 3}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    canonical: bool
    allow_large: bool
    cache_dir: Path
    output: Path | None
    verbose: bool

    def seq_path(self, stages: int) -> Path:
        return self.cache_dir / f"primeseq-{stages}.txt"


def _config(args) -> RunConfig:
    default = Path.home() / ".cache" / "cancelgroups"
    cache = args.cache_dir or os.environ.get(CACHE_ENV) or default
    return RunConfig(args.canonical, args.allow_large, Path(cache),
                     Path(args.output) if args.output else None, args.verbose)


def _check_stages(stages: int, cfg: RunConfig):
    if stages < 0:
        raise UsageError("--stages must be non-negative")
    if stages > DEFAULT_STAGE_CAP and not cfg.allow_large:
        raise UsageError(
            f"refusing to build {stages} stages: the safety cap is {DEFAULT_STAGE_CAP} because "
            "a_i grows super-exponentially; pass --allow-large to override")


def obtain_sequence(stages: int, cfg: RunConfig):
    """The cached sequence with exactly ``stages`` stages, else a fresh build."""
    _check_stages(stages, cfg)
    path = cfg.seq_path(stages)
    if path.exists():
        return cache_load(path)
    return build_sequence(stages, allow_large=cfg.allow_large)


def _verdict_code(verdict: str) -> int:
    return {YES: EXIT_OK, NO: EXIT_NO, UNKNOWN: EXIT_UNKNOWN}[verdict]


# seq ---------------------------------------------------------------------------

def cmd_seq(args, cfg):
    if args.action == "build":
        _check_stages(args.stages, cfg)
        seq = build_sequence(args.stages, allow_large=cfg.allow_large)
        path = Path(args.cache) if args.cache else cfg.seq_path(args.stages)
        cache_save(seq, path)
        report = verify_invariants(seq, provenance=True)
        lines = [f"stages: {seq.stages}", f"cache: {path.name}"]
        lines += [f"a_{i} = {a}" for i, a in enumerate(seq.a)]
        lines += [f"q_{k} = {seq.q[k]}" for k in sorted(seq.q)]
        lines += [f"P[{i},{j}] = {' '.join(map(str, col))}"
                  for (i, j), col in sorted(seq.P.items())]
        lines += report.lines()
        lines.append("invariants: " + ("pass" if report.ok else "FAIL"))
        return (EXIT_OK if report.ok else EXIT_NO), lines
    if args.cache:
        path = Path(args.cache)
    elif args.stages is not None:
        path = cfg.seq_path(args.stages)
    else:
        raise UsageError("seq verify needs --cache PATH or --stages N")
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    try:
        seq, problem = audit_text(text)
    except CacheError as exc:
        return EXIT_NO, [f"cache: {path.name}", f"integrity: FAIL ({exc})", "invariants: FAIL"]
    report = verify_invariants(seq, provenance=True)
    lines = [f"cache: {path.name}", f"stages: {seq.stages}",
             "integrity: " + (f"FAIL ({problem})" if problem else "pass")]
    lines += report.lines()
    for bad in report.failing():
        lines.append(f"failing clause: {bad.clause}")
    ok = report.ok and problem is None
    lines.append("invariants: " + ("pass" if ok else "FAIL"))
    return (EXIT_OK if ok else EXIT_NO), lines


# sr / cancel -------------------------------------------------------------------

def cmd_sr(args, cfg):
    desc = load_description(args.description, loader=lambda n: obtain_sequence(n, cfg),
                            allow_large=cfg.allow_large)
    v = has_one_in_stable_range(desc, bound=args.bound)
    lines = [f"description: {desc}"] + format_verdict(v).splitlines()
    audit = check_certificate(desc, v)
    lines.append("certificate check: " + ("pass" if audit else "FAIL"))
    code = _verdict_code(v.verdict)
    return (code if audit else EXIT_NO), lines


def cmd_cancel(args, cfg):
    g = load_group(args.group)
    v = is_cancellable(g, bound=args.bound)
    body = [ln for ln in format_group(g).splitlines() if ln.strip()]
    lines = ["group:"] + (["  " + ln for ln in body] or ["  (every height is 0)"])
    lines += format_verdict(v).splitlines()
    audit = True
    if v.stable_range is not None:
        audit = check_certificate(endomorphism_ring(g), v.stable_range)
        lines.append("certificate check: " + ("pass" if audit else "FAIL"))
    return (_verdict_code(v.verdict) if audit else EXIT_NO), lines


# reduce ------------------------------------------------------------------------

def cmd_reduce(args, cfg):
    table = load_table(args.table)
    seq = obtain_sequence(table.I_max + table.J_max, cfg)
    if args.action == "ring":
        if isinstance(table, QuantifierTable4):
            raise UsageError("reduce ring takes a table2 file")
        report = build_ring(table, seq)
        return (EXIT_OK if report.agrees else EXIT_NO), report.lines()
    if not isinstance(table, QuantifierTable4):
        raise UsageError(f"reduce {args.action} takes a table4 file")
    if args.action == "build":
        g = build_group(table, seq)
        desc = characterize_M(table, seq)
        inf = set(g.infinite_primes())
        agrees = inf == set(desc.included_primes())
        lines = [f"table: {table.label or Path(args.table).name}",
                 f"stages used: {seq.stages}", "heights:"]
        lines += [f"  {p} {'inf' if h == INF else h}" for p, h in sorted(g.heights.items())]
        lines += [f"infinite-height primes: {' '.join(map(str, sorted(inf))) or '(none)'}",
                  f"characterized M: {desc}",
                  "infinite heights match M: " + ("yes" if agrees else "NO")]
        return (EXIT_OK if agrees else EXIT_NO), lines
    v = classify(table, seq)
    desc = characterize_M(table, seq)
    lines = [f"table: {table.label or Path(args.table).name}", f"M: {desc}"]
    lines += format_verdict(v).splitlines()
    audit = v.stable_range is None or check_certificate(desc, v.stable_range)
    lines.append("certificate check: " + ("pass" if audit else "FAIL"))
    return (_verdict_code(v.verdict) if audit else EXIT_NO), lines


# tree --------------------------------------------------------------------------

def _truncation(args, cfg, T: TreeT) -> Truncation:
    values = {"S_max": args.s_max, "I_max": args.i_max, "K_max": args.k_max, "W": args.w}
    for name, cap in TREE_CAPS.items():
        if values[name] > cap and not cfg.allow_large:
            raise UsageError(f"{name}={values[name]} exceeds the safety cap {cap}; "
                             "pass --allow-large to override")
    try:
        return Truncation.for_tree(T, values["S_max"], values["I_max"], values["K_max"],
                                   values["W"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_tree(args, cfg):
    T = load_tree(args.tree)
    trunc = _truncation(args, cfg, T)
    alloc = allocate_primes(trunc)
    gens = enumerate_generators(T, trunc, alloc)
    if args.action == "build":
        lines = [f"nodes: {' '.join(node_str(s) for s in trunc.sorted_nodes())}",
                 f"t = {alloc.t}", f"Q = {' '.join(map(str, alloc.Q))}"]
        for tag in sorted(alloc.P, key=lambda t: alloc.families.index(("P", t))):
            lines.append(f"P<{tag[0]},{tag[1]}> = {' '.join(map(str, alloc.P[tag]))}")
        for s in sorted(alloc.R):
            lines.append(f"R_{s} = {' '.join(map(str, alloc.R[s]))}")
        lines.append(f"generators: {len(gens)}")
        lines += [g.describe() for g in gens]
        return EXIT_OK, lines
    if args.action == "verify-decomposition":
        if args.path is None:
            raise UsageError("verify-decomposition needs --path")
        try:
            report = verify_decomposition(T, parse_path(args.path), trunc, alloc, gens)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return (EXIT_OK if report.ok else EXIT_NO), report.lines(verbose=cfg.verbose)
    codes, lines = [], []
    for name in args.family:
        try:
            primes, target, span = family_preset(name, gens)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        res = pure_component_probe(primes, gens, args.bound, target, default_window(trunc), span)
        lines.append(f"probe {name}:")
        lines += ["  " + ln for ln in res.lines()]
        codes.append(res.matches)
    return (EXIT_OK if all(codes) else EXIT_NO), lines


# entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--canonical", action="store_true",
                        help="omit timing so output is byte-reproducible")
    common.add_argument("--allow-large", action="store_true", help="lift the safety caps")
    common.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV})")
    common.add_argument("-o", "--output", help="write the report to a file")
    common.add_argument("-v", "--verbose", action="store_true", help="per-item detail")

    p = argparse.ArgumentParser(prog="cancelgroups", parents=[common],
                                description="cancellation of torsion-free abelian groups")
    areas = p.add_subparsers(dest="area", required=True)

    seq = areas.add_parser("seq", help="the special prime sequences").add_subparsers(
        dest="action", required=True)
    b = seq.add_parser("build", parents=[common])
    b.add_argument("--stages", type=int, required=True)
    b.add_argument("--cache")
    v = seq.add_parser("verify", parents=[common])
    v.add_argument("--stages", type=int)
    v.add_argument("--cache")

    sr = areas.add_parser("sr", help="stable range 1 of Z_M").add_subparsers(
        dest="action", required=True)
    c = sr.add_parser("check", parents=[common])
    c.add_argument("description")
    c.add_argument("--bound", type=int, default=1000)

    cancel = areas.add_parser("cancel", help="cancellation of rank-1 groups").add_subparsers(
        dest="action", required=True)
    c = cancel.add_parser("check", parents=[common])
    c.add_argument("group")
    c.add_argument("--bound", type=int, default=1000)

    red = areas.add_parser("reduce", help="quantifier-table reductions").add_subparsers(
        dest="action", required=True)
    for name in ("build", "classify", "ring"):
        r = red.add_parser(name, parents=[common])
        r.add_argument("table")

    tree = areas.add_parser("tree", help="truncations of the tree group").add_subparsers(
        dest="action", required=True)
    for name in ("build", "verify-decomposition", "probe"):
        t = tree.add_parser(name, parents=[common])
        t.add_argument("tree")
        t.add_argument("--s-max", type=int, default=2)
        t.add_argument("--i-max", type=int, default=2)
        t.add_argument("--k-max", type=int, default=3)
        t.add_argument("--w", type=int, default=2)
        if name == "verify-decomposition":
            t.add_argument("--path")
        if name == "probe":
            t.add_argument("--family", nargs="+", default=["t", "x0", "R0"])
            t.add_argument("--bound", type=int, default=1)
    return p


COMMANDS = {"seq": cmd_seq, "sr": cmd_sr, "cancel": cmd_cancel, "reduce": cmd_reduce,
            "tree": cmd_tree}


def run(argv=None):
    """(exit code, report text); never raises for expected failures."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), ""
    cfg = _config(args)
    start = time.perf_counter()
    try:
        code, lines = COMMANDS[args.area](args, cfg)
    except (UsageError, ParseError, CacheError, InvariantViolation) as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except (StageNotBuilt, CoverageError, ResourceError) as exc:
        return EXIT_UNKNOWN, f"unknown: {exc}\n"
    except OSError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    if not cfg.canonical:
        lines.append(f"elapsed: {time.perf_counter() - start:.3f}s")
    text = "\n".join(lines) + "\n"
    if cfg.output:
        cfg.output.write_text(text)
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_NO) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
