import random

import pytest

from cancelgroups.errors import ParseError
from cancelgroups.treegroup import (T_PRIME, X, XNode, Y, Z, GroupElement, TreeT, Truncation,
                                    allocate_primes, brute_force_member, classify_term,
                                    contains, default_window, divisibility_height, elem,
                                    enumerate_generators, family_preset, format_tree,
                                    identity_terms, member, parse_path, parse_tree,
                                    pure_component_probe, uses_allocated_primes,
                                    verify_decomposition)


def _setup(path, S=1, I=1, K=2, W=1):
    T = TreeT.chain(path)
    trunc = Truncation.for_tree(T, S, I, K, W)
    alloc = allocate_primes(trunc)
    return T, trunc, alloc, enumerate_generators(T, trunc, alloc)


@pytest.fixture(scope="module")
def chain0():
    return _setup((0,))


def test_allocation_round_robin():
    trunc = Truncation(1, 0, frozenset(), 1, 1)
    a = allocate_primes(trunc)
    assert a.Q == (3,) and a.family("P", (0, 0)) == (5,) and a.family("R", 0) == (7,)
    assert a.t == T_PRIME == 2


def test_allocation_distinct_and_t_reserved():
    for S, I, W in [(1, 1, 2), (2, 2, 3), (3, 1, 1)]:
        T = TreeT.chain((0,) * I)
        a = allocate_primes(Truncation.for_tree(T, S, I, 2, W))
        primes = a.all_primes()
        assert len(primes) == len(set(primes))
        assert primes.count(2) == 1 and a.owner(2) == ("t", None)
        assert all(len(a.family("P", tag)) == W for tag in a.P)


def test_allocation_prefix_stable_in_W():
    T = TreeT.chain((0,))
    a1 = allocate_primes(Truncation.for_tree(T, 2, 1, 2, 1))
    a2 = allocate_primes(Truncation.for_tree(T, 2, 1, 2, 2))
    assert all(a2.P[tag][:1] == a1.P[tag] for tag in a1.P)


def test_unallocated_family_raises():
    a = allocate_primes(Truncation(1, 0, frozenset(), 1, 1))
    with pytest.raises(KeyError):
        a.family("P", (0, 5))


def test_empty_node_set_gives_items_one_to_six_only():
    T = TreeT.chain(())
    trunc = Truncation(1, 1, frozenset(), 2, 1)
    gens = enumerate_generators(T, trunc, allocate_primes(trunc))
    assert {g.item for g in gens} <= {0, 1, 2, 3, 4, 5, 6}
    assert {1, 2, 3, 5, 6} <= {g.item for g in gens}


def test_root_alone_gives_item_nine_but_not_seven():
    _, _, _, gens = _setup(())
    items = {g.item for g in gens}
    assert 9 in items and 7 not in items and 8 not in items


def test_item_seven_for_node_zero(chain0):
    _, _, alloc, gens = chain0
    found = {g.element for g in gens.by_item(7) if g.part == 0}
    for i, node in [(0, ()), (1, (0,))]:
        for p in alloc.family("P", (1, i)):
            assert (elem(Y(0, i)) + elem(XNode(0, node))) / p in found
            assert elem(XNode(0, node)) / p in {g.element for g in gens.by_item(7)}


def test_denominators_use_allocated_primes(chain0):
    assert uses_allocated_primes(chain0[3])


def test_node_outside_tree_rejected():
    T = TreeT.chain((0,))
    trunc = Truncation(1, 1, frozenset({(), (1,)}), 1, 1)
    with pytest.raises(ValueError):
        enumerate_generators(T, trunc, allocate_primes(trunc))


def test_tree_validation_and_files():
    with pytest.raises(ValueError):
        TreeT(((), (0, 0)))
    with pytest.raises(ValueError):
        TreeT(((0,), ()))
    T = TreeT.from_nodes([(), (0,), (1,), (0, 2)])
    assert parse_tree(format_tree(T)) == T
    assert parse_path("0/0") == (0, 0)
    with pytest.raises(ParseError):
        parse_tree("/\n0/x\n")


def test_member_examples(chain0):
    _, _, alloc, gens = chain0
    assert contains(elem(Z()), gens)
    q = alloc.Q[0]
    ok, coeffs = member(elem(Y(0, 0)) / q, gens)
    assert ok
    total = GroupElement()
    for c, g in zip(coeffs, gens.elements()):
        if c:
            total = total + g * c
    assert total == elem(Y(0, 0)) / q
    assert not contains(elem(Y(0, 0)) / alloc.t, gens)


def test_divisibility_examples():
    T, trunc, alloc, gens = _setup((0, 0), S=1, I=2, K=3)
    assert divisibility_height(elem(Z()), alloc.t, gens, 3) == 3
    assert divisibility_height(elem(X(0, 0)), alloc.t, gens, 3) == 0
    p = alloc.family("P", (1, 0))[0]
    v = elem(Y(0, 0)) + elem(XNode(0, ()))
    # the deepest node enumerated on the path has length 2
    assert divisibility_height(v, p, gens, 3) == 2
    with pytest.raises(ValueError):
        divisibility_height(elem(Z()) / 1009, alloc.t, gens, 3)


def test_no_node_level_grants_no_x_node_divisibility():
    _, trunc, alloc, gens = _setup((), I=1, K=2)
    for i in range(trunc.I_max + 1):
        for p in alloc.family("P", (1, i)):
            assert divisibility_height(elem(XNode(0, ())), p, gens, 2) == 0
            assert divisibility_height(elem(Y(0, i)), p, gens, 2) == 2


def test_member_matches_brute_force_on_small_subsets(chain0):
    rng = random.Random(4)
    elements = chain0[3].elements()
    for _ in range(15):
        sub = rng.sample(elements, 4)
        coeffs = [rng.randint(-2, 2) for _ in sub]
        v = GroupElement()
        for c, e in zip(coeffs, sub):
            v = v + e * c
        ok, cert = member(v, sub)
        assert ok and brute_force_member(v, sub) is not None
        w = v + elem(Z()) / 1009
        assert not member(w, sub)[0] and brute_force_member(w, sub) is None


def test_membership_monotone_under_enlargement():
    T = TreeT.chain((0,))
    small = Truncation.for_tree(T, 1, 1, 1, 1)
    big = Truncation.for_tree(T, 1, 1, 3, 2)
    g_small = enumerate_generators(T, small, allocate_primes(small))
    g_big = enumerate_generators(T, big, allocate_primes(big))
    assert all(contains(e, g_big) for e in g_small.elements())


def test_decomposition_single_node_path():
    T, trunc, alloc, gens = _setup((0,), S=1, I=1, K=2)
    report = verify_decomposition(T, (0,), trunc, alloc, gens)
    assert report.decomposed == len(report.checks) == len(gens)
    assert report.independent and report.ok
    assert report.lines()[-1] == "result: pass"
    counts = report.family_counts()
    assert counts and sum(counts.values()) == len(gens)


def test_identities_sum_to_generator(chain0):
    _, _, _, gens = chain0
    for g in gens:
        terms = identity_terms(g, (0,))[1]
        total = GroupElement()
        for t in terms:
            total = total + t
        assert total == g.element


def test_z_over_t_lands_in_A(chain0):
    for g in chain0[3]:
        if g.family == "t":
            assert all(classify_term(t, (0,)) == "A" for t in identity_terms(g, (0,))[1])


def test_b_blocks_disjoint_for_two_copies():
    T, trunc, alloc, gens = _setup((0,), S=2, I=1, K=1)
    report = verify_decomposition(T, (0,), trunc, alloc, gens)
    assert report.ok
    assert all(r == 0 for r in report.intersections.values())


def test_uncovered_path_rejected():
    T, trunc, alloc, gens = _setup((0,))
    with pytest.raises(ValueError):
        verify_decomposition(T, (1,), trunc, alloc, gens)


@pytest.mark.parametrize("name", ["t", "x0", "R0"])
def test_probe_presets(name, chain0):
    _, trunc, _, gens = chain0
    family, target, span = family_preset(name, gens)
    res = pure_component_probe(family, gens, 1, target, default_window(trunc), span)
    assert res.matches and res.found


def test_unknown_probe_family(chain0):
    with pytest.raises(ValueError):
        family_preset("R7", chain0[3])
    with pytest.raises(ValueError):
        family_preset("nope", chain0[3])
