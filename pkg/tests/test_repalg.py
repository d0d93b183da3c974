import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import hecke
from oracles import is_minimal_annihilator
from workbench.repalg import (CornerSingularError, StrayEigenvalueError, corner_inverse, matrix_minimal_polynomial,
                              matrix_to_csv, minimal_polynomial, neumann_inverse, nilpotency_index, span_closure,
                              spectral_idempotents)


@pytest.fixture(scope="module")
def H():
    return hecke(2, 3, 2)


def test_regular_representation_is_faithful_and_unital(H):
    alg = H.alg
    assert alg.dim == 18
    assert all(ok for _, ok in alg.relation_residuals())
    assert alg.one().coords().tolist() == alg.unit.tolist()
    dim, _ = span_closure([H.S, *H.T])
    assert dim == 18


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_minimal_polynomial_against_brute_force(H, coeffs):
    x = H.S * coeffs[0] + H.T[0] * coeffs[1] + H.X[1] * coeffs[2]
    mp = minimal_polynomial(x)
    M = x.M.tolist()
    assert is_minimal_annihilator(M, [int(c) for c in mp], 7)
    assert [int(c) for c in matrix_minimal_polynomial(H.alg.F, x.M)] == [int(c) for c in mp]


def test_spectral_idempotents_are_complete_and_orthogonal(H):
    idems = spectral_idempotents(H.X, H.grid)
    es = list(idems.values())
    total = H.alg.zero()
    for a in es:
        total = total + a
        assert a * a == a
        for b in es:
            if b is not a:
                assert (a * b).is_zero()
    assert total == H.alg.one()
    for k, e in idems.items():
        for a, X in enumerate(H.X):
            N = (X - k[a].value) * e
            assert nilpotency_index(N) is not None


def test_stray_eigenvalue(H):
    grid = dict(list(H.grid.items())[:-1])
    with pytest.raises(StrayEigenvalueError):
        spectral_idempotents(H.X, grid)


def test_noncommuting_input_is_refused(H):
    with pytest.raises(ValueError):
        spectral_idempotents([H.S, H.T[0]], H.grid)


def test_corner_inverse_matches_neumann_series(H):
    idems = spectral_idempotents(H.X, H.grid)
    checked = 0
    for k, e in idems.items():
        x = e * H.X[1] * e
        inv = corner_inverse(x, e)
        assert inv * x == e and x * inv == e
        assert inv == neumann_inverse(x, e)
        checked += 1
    assert checked == len(idems)


def test_corner_singular(H):
    idems = spectral_idempotents(H.X, H.grid)
    e = next(iter(idems.values()))
    N = (H.X[0] - next(iter(idems))[0].value) * e
    with pytest.raises(CornerSingularError):
        corner_inverse(e * N * e, e)


def test_nilpotency_index(H):
    assert nilpotency_index(H.alg.zero()) == 1
    assert nilpotency_index(H.alg.one()) is None


def test_csv_is_row_per_line(H):
    text = matrix_to_csv(H.S.M, H.alg.F)
    rows = text.strip().splitlines()
    assert len(rows) == 18 and all(len(r.split(",")) == 18 for r in rows)
    assert np.array_equal(np.array([[int(x) for x in r.split(",")] for r in rows]), H.S.M)
