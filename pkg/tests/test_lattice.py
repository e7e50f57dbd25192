from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from cancelgroups.lattice import (FullRankLattice, Lattice, hermite_normal_form, intersect,
                                  member, rank, xgcd)

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1,
                           max_size=max_rows))


def _brute(v, gens, bound=3):
    dim = len(v)
    for coeffs in product(range(-bound, bound + 1), repeat=len(gens)):
        if all(sum(c * g[k] for c, g in zip(coeffs, gens)) == v[k] for k in range(dim)):
            return coeffs
    return None


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0)]:
        g, x, y = xgcd(a, b)
        assert g >= 0 and x * a + y * b == g


def test_identity_is_its_own_form():
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    H, U = hermite_normal_form(I)
    assert H == I and U == I


def test_small_example_same_lattice():
    M = [[2, 0], [0, 3], [1, 1]]
    H, _ = hermite_normal_form(M)
    L = Lattice(M)
    rows = [r for r in H if any(r)]
    assert all(tuple(r) in Lattice(M) for r in rows)
    assert all(tuple(r) in Lattice(rows) for r in M)
    # (1,1) and (2,0) already give (0,2); with (0,3) that is all of Z^2
    assert (1, 0) in L and (0, 1) in L


@given(matrices())
@settings(max_examples=80)
def test_transform_unimodular_and_consistent(M):
    H, U = hermite_normal_form(M)
    assert abs(Matrix(U).det()) == 1
    assert (Matrix(U) * Matrix(M)).tolist() == H


@given(matrices())
@settings(max_examples=80)
def test_idempotent_and_lattice_preserving(M):
    H, _ = hermite_normal_form(M)
    H2, _ = hermite_normal_form(H)
    assert H2 == H
    rows = [r for r in H if any(r)]
    n = len(M[0])
    assert all(tuple(r) in Lattice(rows, dim=n) for r in M)
    assert all(tuple(r) in Lattice(M) for r in rows)


@given(matrices())
def test_pivots_positive_and_reduced(M):
    H, _ = hermite_normal_form(M)
    last = -1
    for k, row in enumerate(r for r in H if any(r)):
        p = next(j for j, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        assert all(0 <= H[a][p] < row[p] for a in range(k))
        last = p


@given(st.integers(1, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_member_agrees_with_brute_force(dim, data):
    ngens = data.draw(st.integers(1, 4))
    gens = [tuple(data.draw(st.lists(st.integers(-3, 3), min_size=dim, max_size=dim)))
            for _ in range(ngens)]
    v = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=dim, max_size=dim)))
    ok, coeffs = member(v, gens)
    found = _brute(v, gens)
    if found is not None:
        assert ok
    if ok:
        assert all(sum(c * g[k] for c, g in zip(coeffs, gens)) == v[k] for k in range(dim))


def test_member_six_generators_exhaustive():
    gens = [(2, 0, 0, 1, 0, 0), (0, 3, 0, 0, 1, 0), (0, 0, 5, 0, 0, 1),
            (1, 1, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0), (0, 0, 0, 2, 2, 2)]
    for v in [(3, 4, 1, 1, 1, 0), (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1), (2, 2, 2, 2, 2, 2)]:
        ok, coeffs = member(v, gens)
        assert ok == (_brute(v, gens) is not None)


def test_rational_generators():
    gens = [(Fraction(1, 2), 0), (0, Fraction(1, 3))]
    assert member((Fraction(3, 2), Fraction(2, 3)), gens) == (True, [3, 2])
    assert not member((Fraction(1, 4), 0), gens)[0]


def test_intersection_matches_brute_force():
    A = Lattice([(2, 0), (0, 3)])
    B = Lattice([(3, 0), (0, 2)])
    C = intersect(A, B)
    assert C.rank == 2
    box = product(range(-12, 13), repeat=2)
    assert all((v in C) == (v in A and v in B) for v in box)


def test_rank():
    assert rank([(1, 2), (2, 4)]) == 1
    assert rank([], dim=3) == 0


@given(st.lists(st.lists(st.fractions(max_denominator=6), min_size=3, max_size=3), max_size=4))
@settings(max_examples=50)
def test_full_rank_lattice_matches_general_engine(vecs):
    scale = 60
    F = FullRankLattice(3, scale)
    gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for v in vecs:
        if all((x * scale).denominator == 1 for x in v):
            F.add(v)
            gens.append(tuple(v))
    L = Lattice(gens)
    for v in product([Fraction(k, 12) for k in range(-3, 4)], repeat=3):
        assert (v in F) == (v in L)
    assert all(tuple(r) in L for r in F.basis_rows())
