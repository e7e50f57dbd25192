import random
from dataclasses import replace
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cancelgroups.descriptions import Cofinite, ColumnUnion, Cutoff, Finite, Total
from cancelgroups.errors import CoverageError, ParseError, StageNotBuilt
from cancelgroups.ntheory import factorize, is_prime, is_quadratic_residue
from cancelgroups.primeseq import build_sequence
from cancelgroups.rank1 import INF, LocalizationRing, Rank1Group
from cancelgroups.stablerange import (NO, UNKNOWN, YES, ClosedForm, Obstruction,
                                      StableRangeVerdict, UnitRecipe, check_certificate,
                                      find_obstruction, format_description, format_verdict,
                                      has_one_in_stable_range, is_cancellable,
                                      parse_description, reciprocity_obstruction, solve_unit)

SMALL = [p for p in range(2, 60) if is_prime(p)]


def _products(primes, length):
    """+-1 times products of at most ``length`` primes (with repetition)."""
    out = {1}
    frontier = {1}
    for _ in range(length):
        frontier = {x * p for x in frontier for p in primes}
        out |= frontier
    return out | {-x for x in out}


def test_cofinite_empty_is_yes():
    v = has_one_in_stable_range(Cofinite(()))
    assert v.verdict == YES and isinstance(v.certificate, ClosedForm)
    assert check_certificate(Cofinite(()), v)


def test_finite_empty_obstruction():
    v = has_one_in_stable_range(Finite(()))
    assert v.verdict == NO
    obs = v.certificate
    assert (obs.alpha1, obs.alpha2) == (2, 5)
    assert check_certificate(Finite(()), v)


def test_three_ten_witness_audits_and_nine_ten_does_not():
    good = StableRangeVerdict(NO, Obstruction(3, 10, "subgroup"))
    bad = StableRangeVerdict(NO, Obstruction(9, 10, "subgroup"))
    assert check_certificate(Finite(()), good)
    assert not check_certificate(Finite(()), bad)
    # brute force: 3m + 10b is never +-1 for m in {+-1}
    assert all(3 * m % 10 not in (1, 9) for m in (1, -1))


def test_find_obstruction_cofinite_not_found():
    assert find_obstruction(Cofinite(()), 100) is None


def test_find_obstruction_finite_bound_20():
    obs = find_obstruction(Finite(()), 20)
    assert obs is not None and obs.alpha2 <= 20
    H = {1 % obs.alpha2, -1 % obs.alpha2}
    assert obs.alpha1 % obs.alpha2 not in H


def test_cutoff_obstruction_at_q1():
    seq = build_sequence(2)
    desc = ColumnUnion(seq, Cutoff(1, (0,)))
    v = has_one_in_stable_range(desc)
    assert v.verdict == NO
    obs = v.certificate
    assert obs.alpha2 == seq.q[1] == 61
    least = next(p for p in SMALL if not is_quadratic_residue(p, 61))
    assert obs.alpha1 == least == 2
    assert all(is_quadratic_residue(p, 61) for p in desc.included_primes())
    assert check_certificate(desc, v)


def test_solve_unit_examples():
    desc = ColumnUnion(build_sequence(0), Total((0,)))
    w = solve_unit(desc, 2, 3)
    assert w.value == 5 and 2 * w.value % 3 == 1
    assert solve_unit(desc, 1, 3).value == 1


def test_solve_unit_names_missing_stage():
    desc = ColumnUnion(build_sequence(1), Total((0, 0)))
    with pytest.raises(StageNotBuilt) as exc:
        solve_unit(desc, 2, 7)
    assert exc.value.stage == 8
    assert "stage 8" in str(exc.value)


def test_solve_unit_rejects_bad_inputs():
    desc = ColumnUnion(build_sequence(1), Total((0, 0)))
    with pytest.raises(ValueError):
        solve_unit(desc, 3, 3)
    with pytest.raises(ValueError):
        solve_unit(desc, 5, 3)
    with pytest.raises(TypeError):
        solve_unit(ColumnUnion(build_sequence(1), Cutoff(1, (0,))), 2, 3)


def test_solve_unit_coverage_error():
    desc = ColumnUnion(build_sequence(1), Total((0,)))
    with pytest.raises(CoverageError):
        solve_unit(desc, 2, 61)


def test_total_unknown_when_stage_missing():
    desc = ColumnUnion(build_sequence(2), Total((0, 1, 0)))
    v = has_one_in_stable_range(desc)
    assert v.verdict == UNKNOWN and v.missing_stage == 3
    assert check_certificate(desc, v)


def test_total_yes_with_recipe():
    desc = ColumnUnion(build_sequence(2), Total((0, 0)))
    v = has_one_in_stable_range(desc)
    assert v.verdict == YES and isinstance(v.certificate, UnitRecipe)
    assert check_certificate(desc, v)


def test_tampered_recipe_fails_audit():
    desc = ColumnUnion(build_sequence(2), Total((0, 0)))
    v = has_one_in_stable_range(desc)
    cert = v.certificate
    cols = ((0, 0, ()),) + cert.columns[1:]
    assert not check_certificate(desc, replace(v, certificate=replace(cert, columns=cols)))


def test_closed_form_only_for_cofinite():
    v = StableRangeVerdict(YES, ClosedForm("cofinite"))
    assert not check_certificate(Finite({5}), v)


def test_reciprocity_fallback():
    S = Finite({2, 3, 5, 7})
    v = has_one_in_stable_range(S)
    assert v.verdict == NO and check_certificate(S, v)
    obs = reciprocity_obstruction(S.primes)
    assert (obs.alpha1, obs.alpha2) == (11, 2521)


@given(st.sets(st.sampled_from(SMALL[:8]), max_size=3))
@settings(max_examples=40, deadline=None)
def test_finite_verdicts_always_audit(primes):
    d = Finite(primes)
    v = has_one_in_stable_range(d)
    assert v.verdict == NO and check_certificate(d, v)


@given(st.sets(st.sampled_from(SMALL[:8]), max_size=3))
@settings(max_examples=40, deadline=None)
def test_no_verdicts_are_sound_by_brute_force(primes):
    d = Finite(primes)
    obs = has_one_in_stable_range(d).certificate
    members = _products(sorted(primes), 4) if primes else {1, -1}
    for m in members:
        for m2 in members:
            assert (obs.alpha1 * m - m2) % obs.alpha2 != 0


@given(st.sets(st.sampled_from(SMALL[:8]), max_size=3))
def test_cofinite_verdicts_always_audit(excluded):
    d = Cofinite(excluded)
    v = has_one_in_stable_range(d)
    assert v.verdict == YES and check_certificate(d, v)


def _is_unit(x, inverted):
    """x a nonzero integer; a unit of Z_S iff every prime factor is inverted."""
    return x != 0 and all(inverted(p) for p in factorize(abs(x)))


def test_definition_oracle_finite_refutes_yes():
    """For Finite S with <= 2 primes the window contains a pair (f1, f2) with
    f1 g1 + f2 g2 = 1 and no h making f1 + f2 h a unit: a refutation of Yes."""
    rng = random.Random(7)
    for _ in range(10):
        S = set(rng.sample(SMALL[:6], rng.randint(0, 2)))
        assert has_one_in_stable_range(Finite(S)).verdict == NO
        found = False
        for f1, f2 in product(range(1, 51), repeat=2):
            if gcd(f1, f2) != 1 or any(f1 % p == 0 or f2 % p == 0 for p in S):
                continue
            dens = [d for d in range(1, 51) if all(p in S for p in factorize(d))]
            if not any(_is_unit(f1 * d + f2 * n, S.__contains__)
                       for d in dens for n in range(-50, 51)):
                found = True
                break
        assert found


def test_definition_oracle_cofinite_never_refuted():
    E = {2, 3}
    for f1, f2 in product(range(1, 31), repeat=2):
        if gcd(f1, f2) != 1:
            continue
        assert any(_is_unit(f1 + f2 * h, lambda p: p not in E) for h in range(-50, 51))


def test_is_cancellable_examples():
    assert is_cancellable(Rank1Group()).verdict == YES
    v = is_cancellable(Rank1Group({5: INF}))
    assert v.verdict == NO
    assert check_certificate(Finite({5}), v.stable_range)
    assert is_cancellable(Cofinite({7}), non_Z=True).verdict == YES
    assert is_cancellable(LocalizationRing(Finite(())), non_Z=False).verdict == YES


def test_rationals_caveat_noted():
    v = is_cancellable(Cofinite(()), non_Z=True)
    assert v.verdict == YES and v.notes


def test_cyclic_groups_are_cancellable():
    assert is_cancellable(Rank1Group({5: 2})).verdict == YES


def test_description_round_trip():
    for d in (Finite({5, 7}), Cofinite({2})):
        assert parse_description(format_description(d)) == d
    seq = build_sequence(2)
    d = ColumnUnion(seq, Cutoff(1, (0,)))
    back = parse_description(format_description(d), loader=lambda n: build_sequence(n))
    assert back.rule == d.rule and back.seq == seq


def test_description_parse_errors():
    with pytest.raises(ParseError, match=":2:"):
        parse_description("kind finite\nprimes 5 6\n", "d.txt")
    with pytest.raises(ParseError, match=":1:"):
        parse_description("primes 5\n", "d.txt")


def test_verdict_report_inlines_certificate():
    text = format_verdict(has_one_in_stable_range(Finite({5})))
    assert "alpha1 = 2" in text and "alpha2 = 13" in text
