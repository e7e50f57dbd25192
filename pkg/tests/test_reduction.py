import random

import pytest

from cancelgroups.descriptions import Cutoff, Finite, Total
from cancelgroups.errors import InvariantViolation, ParseError, StageNotBuilt
from cancelgroups.primeseq import build_sequence
from cancelgroups.rank1 import INF, endomorphism_ring
from cancelgroups.reduction import (QuantifierTable2, QuantifierTable4, bounded_condition,
                                    build_group, build_ring, characterize_M, classify,
                                    format_table2, format_table4, is_total, parse_table2,
                                    parse_table4)
from cancelgroups.stablerange import NO, YES, check_certificate, has_one_in_stable_range
from helpers import random_table2, random_table4


@pytest.fixture(scope="module")
def seq2():
    return build_sequence(2)


def _all_true(I, J, U, V, flags=True):
    entries = {(i, j, u, v) for i in range(I + 1) for j in range(J + 1)
               for u in range(U + 1) for v in range(V + 1)}
    fl = {(i, j) for i in range(I + 1) for j in range(J + 1)} if flags else {(0, 0)}
    return QuantifierTable4(I, J, U, V, frozenset(entries), frozenset(fl))


def _oracle_height(t, i, j):
    """Largest m satisfying the nested condition, evaluated by plain loops."""
    def holds(m):
        for i2 in range(i + 1):
            if not any((i2, j2) in t.total_flags or (
                    m <= t.U_max and all(any((i2, j2, u, v) in t.entries
                                             for v in range(t.V_max + 1))
                                         for u in range(m + 1)))
                       for j2 in range(j + 1)):
                return False
        return True
    if holds(t.U_max + 1):
        return INF
    return max([m for m in range(t.U_max + 1) if holds(m)], default=0)


def test_all_true_gives_infinite_heights(seq2):
    g = build_group(_all_true(1, 1, 1, 1), seq2)
    covered = [p for (i, j), col in seq2.P.items() if i <= 1 and j <= 1 for p in col]
    assert covered and all(g.height(p) == INF for p in covered)


def test_empty_row_zero_rejected(seq2):
    t = QuantifierTable4(1, 1, 1, 1, frozenset({(1, 0, 0, 0)}))
    with pytest.raises(InvariantViolation, match="normalize"):
        build_group(t, seq2)


def test_bounded_height_two(seq2):
    entries = {(0, 0, u, 0) for u in range(3)}
    t = QuantifierTable4(0, 0, 4, 0, frozenset(entries))
    g = build_group(t, seq2)
    assert all(g.height(p) == 2 for p in seq2.P[(0, 0)])


def test_characterize_all_flags_is_total(seq2):
    d = characterize_M(_all_true(2, 0, 0, 0), seq2)
    assert d.rule == Total((0, 0, 0))


def test_characterize_failing_row_one_is_cutoff(seq2):
    entries = {(0, j, 0, 0) for j in range(2)}
    t = QuantifierTable4(1, 1, 0, 0, frozenset(entries), frozenset({(0, 0)}))
    d = characterize_M(t, seq2)
    assert isinstance(d.rule, Cutoff) and d.rule.i_star == 1


def test_classify_examples(seq2):
    assert classify(_all_true(1, 1, 0, 0), seq2).verdict == YES
    t = QuantifierTable4(1, 1, 0, 0, frozenset({(0, 0, 0, 0)}), frozenset({(0, 0)}))
    v = classify(t, seq2)
    assert v.verdict == NO
    assert v.stable_range.certificate.alpha2 == seq2.q[1]


def test_malformed_flag_rejected():
    with pytest.raises(InvariantViolation, match="total_flags"):
        QuantifierTable4(0, 0, 1, 0, frozenset({(0, 0, 0, 0)}), frozenset({(0, 0)}))


def test_stages_named(seq2):
    with pytest.raises(StageNotBuilt) as exc:
        build_group(_all_true(2, 1, 0, 0), seq2)
    assert exc.value.stage == 3


def test_heights_match_oracle_and_infinite_columns(seq2):
    rng = random.Random(11)
    for k in range(60):
        t = random_table4(rng, "total" if k % 2 else "cutoff")
        g = build_group(t, seq2)
        for (i, j), col in seq2.P.items():
            for p in col:
                assert g.height(p) == _oracle_height(t, i, j)
        infinite = {p for p in g.heights if g.height(p) == INF}
        assert infinite == set(characterize_M(t, seq2).included_primes())


def test_monotone_in_i_and_antitone_in_m(seq2):
    rng = random.Random(5)
    for _ in range(30):
        t = random_table4(rng, rng.choice(["total", "cutoff"]))
        for j in range(t.J_max + 1):
            for i in range(t.I_max + 1):
                for m in range(t.U_max + 2):
                    now = bounded_condition(t, i, j, m)
                    if m and now:
                        assert bounded_condition(t, i, j, m - 1)
                    if i and now:
                        assert bounded_condition(t, i - 1, j, m)


def test_classify_agrees_with_shape(seq2):
    rng = random.Random(3)
    for k in range(40):
        kind = "total" if k % 2 else "cutoff"
        t = random_table4(rng, kind)
        assert is_total(t) == (kind == "total")
        v = classify(t, seq2)
        assert v.verdict == (YES if kind == "total" else NO)


def test_endomorphism_ring_matches_columns(seq2):
    rng = random.Random(9)
    for _ in range(20):
        t = random_table4(rng, rng.choice(["total", "cutoff"]))
        ring = endomorphism_ring(build_group(t, seq2))
        assert ring.inverted == Finite(characterize_M(t, seq2).included_primes())


def test_ring_examples(seq2):
    full = QuantifierTable2(1, 1, frozenset({(i, j) for i in range(2) for j in range(2)}))
    r = build_ring(full, seq2)
    assert isinstance(r.description.rule, Total) and r.agrees
    r = build_ring(QuantifierTable2(1, 1, frozenset({(0, 0)})), seq2)
    assert r.description.rule == Cutoff(1, (0,)) and r.agrees


def test_ring_verdicts_match_shape(seq2):
    rng = random.Random(2)
    for _ in range(30):
        t = random_table2(rng)
        r = build_ring(t, seq2)
        assert r.agrees
        v = has_one_in_stable_range(r.description)
        assert v.verdict == (YES if is_total(t) else NO)
        assert check_certificate(r.description, v)


def test_table_files_round_trip():
    rng = random.Random(1)
    t4 = random_table4(rng, "cutoff")
    assert parse_table4(format_table4(t4)) == t4
    t2 = random_table2(rng)
    assert parse_table2(format_table2(t2)) == t2


def test_table_parse_errors():
    with pytest.raises(ParseError, match=":3:"):
        parse_table4("table4 v1\nbounds 0 0 0 0\nR 0 0 x 0\n", "t.txt")
    with pytest.raises(ParseError):
        parse_table2("table4 v1\nbounds 0 0\n")
