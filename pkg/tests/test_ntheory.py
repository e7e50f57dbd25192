from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cancelgroups.errors import ResourceError
from cancelgroups.ntheory import (Congruence, UnitGroup, crt_combine, dirichlet_scan,
                                  dirichlet_search, factorize, is_prime, is_quadratic_residue,
                                  nth_prime, primes_from, reciprocity_check,
                                  subgroup_generated, unit_group_generators)
from helpers import brute_residues


def _trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if _trial_prime(n)]


def test_nth_prime_is_one_based():
    assert nth_prime(1) == 2
    assert nth_prime(10) == 29
    with pytest.raises(ValueError):
        nth_prime(0)


def test_primes_from():
    gen = primes_from(14)
    assert [next(gen) for _ in range(3)] == [17, 19, 23]


def test_dirichlet_search_examples():
    assert dirichlet_search(1, 4) == 5
    assert dirichlet_search(1, 60) == 61
    rec = dirichlet_scan(1, 4, lower_bound=5)
    assert rec.result == 13 and rec.scanned == 2


def test_dirichlet_search_rejects_noncoprime_class():
    with pytest.raises(ValueError):
        dirichlet_search(2, 4)


def test_dirichlet_search_ceiling():
    with pytest.raises(ResourceError):
        dirichlet_search(1, 10**12, ceiling=1)


@given(st.integers(1, 200), st.integers(0, 1000))
@settings(max_examples=60, deadline=None)
def test_dirichlet_result_is_least(d, low):
    a = next(x for x in range(1, d + 1) if gcd(x, d) == 1)
    p = dirichlet_search(a, d, low)
    assert p > low and p % d == a % d and is_prime(p)
    assert not any(is_prime(c) for c in range(low + 1, p) if c % d == a % d)


@given(st.integers(1, 10**6))
@settings(max_examples=100, deadline=None)
def test_factorize_multiplies_out(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p)
        prod *= p ** e
    assert prod == n


def test_factorize_hints():
    big = 1000000007 * 998244353
    assert factorize(big * 12, hints=[1000000007]) == {2: 2, 3: 1, 998244353: 1, 1000000007: 1}


def test_euler_criterion_examples():
    assert is_quadratic_residue(2, 7)
    assert not is_quadratic_residue(3, 7)
    assert is_quadratic_residue(-1, 5)
    with pytest.raises(ValueError):
        is_quadratic_residue(5, 5)
    with pytest.raises(ValueError):
        is_quadratic_residue(1, 9)


@pytest.mark.parametrize("q", [p for p in range(3, 120) if _trial_prime(p)])
def test_residues_match_squares(q):
    squares = brute_residues(q)
    assert {a for a in range(1, q) if is_quadratic_residue(a, q)} == squares


def test_reciprocity_small_pairs():
    odd = [p for p in range(3, 80) if _trial_prime(p)]
    assert all(reciprocity_check(p, q) for p in odd for q in odd if p != q)
    with pytest.raises(ValueError):
        reciprocity_check(3, 3)


def test_crt_combine():
    c = crt_combine([Congruence(2, 3), Congruence(3, 5), Congruence(2, 7)])
    assert c == Congruence(23, 105)
    with pytest.raises(ValueError):
        crt_combine([Congruence(1, 4), Congruence(1, 6)])
    assert crt_combine([]) == Congruence(0, 1)


@given(st.lists(st.sampled_from([3, 4, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True),
       st.data())
def test_crt_combine_satisfies_all(moduli, data):
    if any(gcd(a, b) != 1 for a in moduli for b in moduli if a != b):
        return
    cs = [Congruence.of(data.draw(st.integers(0, m - 1)), m) for m in moduli]
    c = crt_combine(cs)
    assert all(x.holds(c.residue) for x in cs)


@pytest.mark.parametrize("n", [3, 8, 9, 15, 16, 24, 45, 61, 100, 366, 1024])
def test_unit_group_generates_matches_enumeration(n):
    G = UnitGroup(n)
    units = {x for x in range(1, n) if gcd(x, n) == 1}
    gens = unit_group_generators(n)
    assert subgroup_generated(n, gens) == units
    assert G.generates(gens)
    assert G.order == len(units)
    for k in range(len(gens)):
        part = gens[:k] + gens[k + 1:]
        assert G.generates(part) == (subgroup_generated(n, part) == units)


@given(st.integers(3, 300), st.lists(st.integers(2, 300), min_size=1, max_size=3), st.data())
@settings(max_examples=80, deadline=None)
def test_subgroup_membership_and_express(n, raw, data):
    gens = [g for g in raw if gcd(g, n) == 1]
    if not gens:
        return
    G = UnitGroup(n)
    H = subgroup_generated(n, gens)
    x = data.draw(st.integers(1, n - 1))
    if gcd(x, n) != 1:
        return
    assert G.contains(x, gens) == (x in H)
    exps = G.express(x, gens)
    if x in H:
        acc = 1
        for g, e in zip(gens, exps):
            acc = acc * pow(g, e, n) % n
        assert acc == x % n
    else:
        assert exps is None


def test_listed_examples():
    assert is_quadratic_residue(1, 7)
    assert reciprocity_check(13, 17) and reciprocity_check(3, 7)
    assert is_quadratic_residue(13, 17) == is_quadratic_residue(17, 13)
    assert is_quadratic_residue(3, 7) != is_quadratic_residue(7, 3)
    assert dirichlet_search(1, 12, 0) == 13
    assert dirichlet_search(1, 4, 13) == 17
    assert crt_combine([Congruence(1, 13), Congruence(2, 3)]) == Congruence(14, 39)
    assert crt_combine([Congruence(0, 5)]) == Congruence(0, 5)
    assert set(unit_group_generators(3)) == {2}
    assert set(unit_group_generators(8)) == {3, 5}
    assert set(unit_group_generators(2)) == set()
    assert subgroup_generated(7, {2}) == {1, 2, 4}
    assert subgroup_generated(7, {3}) == set(range(1, 7))
    assert subgroup_generated(5, set()) == {1}


def test_non_unit_generator_rejected():
    with pytest.raises(ValueError):
        subgroup_generated(8, {2})


def test_half_the_units_are_residues():
    for q in range(3, 500):
        if _trial_prime(q):
            assert sum(is_quadratic_residue(a, q) for a in range(1, q)) == (q - 1) // 2


def test_unit_generators_up_to_1000():
    for n in range(2, 1001):
        units = {x for x in range(1, n) if gcd(x, n) == 1} or {1}
        assert subgroup_generated(n, unit_group_generators(n)) | {1} == units | {1}


@given(st.sampled_from([p for p in range(3, 200) if _trial_prime(p)]), st.data())
def test_products_of_residues(q, data):
    res = sorted(brute_residues(q))
    factors = data.draw(st.lists(st.sampled_from(res), min_size=1, max_size=5))
    acc = 1
    for f in factors:
        acc = acc * f % q
    assert is_quadratic_residue(acc, q)
    non = next(a for a in range(2, q) if a not in res)
    assert non % q != acc
