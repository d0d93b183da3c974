import numpy as np
from hypothesis import given, settings, strategies as st

from oracles import rank_mod
from workbench.linalg import IncrementalSpan, identity, inverse, matmul, nullspace, rank, rref, solve
from workbench.poly import (from_roots, padd, pdivmod, pegcd, peval, peval_matrix, pmul, split_over_grid,
                            trim)
from workbench.scalars import PrimeField, RationalField

F = PrimeField(7)
Q = RationalField()

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 6), min_size=n, max_size=n), min_size=n, max_size=n))
polys = st.lists(st.integers(0, 6), min_size=0, max_size=6)


@given(matrices)
def test_rank_matches_oracle(rows):
    A = F.array(rows)
    assert rank(F, A) == rank_mod(rows, 7)


@given(matrices)
def test_inverse_or_singular(rows):
    A = F.array(rows)
    n = A.shape[0]
    if rank(F, A) < n:
        try:
            inverse(F, A)
        except ZeroDivisionError:
            return
        raise AssertionError("singular matrix was inverted")
    assert np.array_equal(matmul(F, A, inverse(F, A)), identity(F, n))


@given(matrices)
def test_nullspace_is_annihilated(rows):
    A = F.array(rows)
    N = nullspace(F, A)
    assert N.shape[1] == A.shape[1] - rank(F, A)
    assert not matmul(F, A, N).any()


@given(matrices, st.data())
def test_solve_consistent_systems(rows, data):
    A = F.array(rows)
    x = F.array(data.draw(st.lists(st.integers(0, 6), min_size=A.shape[1], max_size=A.shape[1])))
    b = matmul(F, A, x.reshape(-1, 1)).reshape(-1)
    y = solve(F, A, b)
    assert np.array_equal(matmul(F, A, y.reshape(-1, 1)).reshape(-1), b)


def test_large_modulus_falls_back_to_exact_products():
    big = PrimeField(2_147_483_647)
    A = big.array([[big.modulus - 1] * 4] * 4)
    assert matmul(big, A, A)[0, 0] == 4 % big.modulus


def test_rationals_rref():
    A = Q.array([[1, 2], [2, 4]])
    R, piv = rref(Q, A)
    assert piv == [0]


@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), max_size=6))
def test_incremental_span_tracks_rank(rows):
    span = IncrementalSpan(F, 4)
    for r in rows:
        span.add(F.array(r))
    assert len(span) == (rank_mod(rows, 7) if rows else 0)
    for r in rows:
        assert span.contains(F.array(r))


@given(polys, polys.filter(lambda g: trim(F, g)))
def test_division_identity(f, g):
    quo, rem = pdivmod(F, f, g)
    assert padd(F, pmul(F, quo, g), rem) == trim(F, f)
    assert len(rem) < len(trim(F, g))


@given(polys, polys)
def test_bezout(f, g):
    if not trim(F, f) and not trim(F, g):
        return
    d, s, t = pegcd(F, f, g)
    assert padd(F, pmul(F, s, f), pmul(F, t, g)) == d


@given(st.lists(st.tuples(st.integers(1, 6), st.integers(1, 3)), max_size=3))
def test_split_over_grid_recovers_roots(roots):
    merged: dict = {}
    for v, m in roots:
        merged[v] = merged.get(v, 0) + m
    f = from_roots(F, merged.items())
    mults, rest = split_over_grid(F, f, range(1, 7))
    assert mults == merged and rest == [1]


@settings(max_examples=30)
@given(polys, matrices)
def test_matrix_evaluation_is_a_homomorphism(f, rows):
    A = F.array(rows)
    g = [1, 2]
    lhs = peval_matrix(F, pmul(F, f, g), A)
    rhs = matmul(F, peval_matrix(F, f, A), peval_matrix(F, g, A))
    assert np.array_equal(lhs, rhs)
    assert peval(F, pmul(F, f, g), 3) == F.mul(peval(F, f, 3), peval(F, g, 3))
