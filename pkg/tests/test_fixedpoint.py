import functools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import hecke, images, setup
from oracles import fixed_point_count
from workbench.bkiso import BK, SW, build_hecke
from workbench.fixedpoint import (FixedPointError, appendix_checks, averaging_projector, fixed_presentation_check,
                                  graded_subalgebra_check, hecke_shift, independence_of_q_check, klr_dimension,
                                  bracket_identity_sides, grpn_images, phi_images, shift_sectors,
                                  verify_intertwining)
from workbench.params import Weight
from workbench.quiver import BOTH, adjacency
from workbench.rewrite import LaurentPoly

CONFIGS = [(2, 2, 2), (2, 3, 2), (3, 3, 2), (3, 2, 2), (2, 4, 2), (2, 2, 3)]

# graded dimensions of the fixed-point algebras, computed once and frozen
FIXED_GRADED = {
    (2, 2, 2): {0: 1, 2: 2, 4: 1},
    (2, 3, 2): {0: 5, 2: 1},
    (3, 3, 2): {0: 2, 1: 2, 2: 2},
    (2, 2, 3): {-2: 1, 0: 6, 2: 10, 4: 6, 6: 1},
}


@functools.lru_cache(maxsize=None)
def shift(e, p, n):
    return hecke_shift(hecke(e, p, n))


@pytest.mark.parametrize("e,p,n", CONFIGS)
def test_shift_is_an_automorphism_of_order_p(e, p, n):
    sh = shift(e, p, n)
    assert sh.verified
    H = hecke(e, p, n)
    assert sh.apply(H.S) == H.S * H.params.zeta
    assert all(sh.apply(Ta) == Ta for Ta in H.T)


def test_involution_when_p_is_two():
    H = hecke(2, 2, 2)
    sh = shift(2, 2, 2)
    assert sh.apply(H.S) == -H.S
    x = H.S * H.T[0] + H.T[0] * H.S * H.S
    assert sh.apply(sh.apply(x)) == x


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 3, 2), (3, 3, 2), (2, 2, 3)]), st.data())
def test_shift_is_multiplicative(cfg, data):
    H = hecke(*cfg)
    sh = shift(*cfg)
    F = H.alg.F
    gens = [H.S, *H.T]

    def element():
        acc = H.alg.zero()
        for _ in range(data.draw(st.integers(1, 3))):
            word = data.draw(st.lists(st.integers(0, len(gens) - 1), max_size=4))
            c = data.draw(st.integers(1, F.modulus - 1))
            term = H.alg.one()
            for g in word:
                term = term * gens[g]
            acc = acc + term * c
        return acc

    x, y = element(), element()
    assert sh.apply(x * y) == sh.apply(x) * sh.apply(y)
    assert sh.apply(x) == sh.apply_by_coords(x)


def test_unstable_weight_has_no_shift():
    P, _, _ = setup(3, 3, 2)
    H = build_hecke(P, Weight.from_map("IxJ'", {(0, 1): 3}))
    with pytest.raises(FixedPointError):
        hecke_shift(H)


@pytest.mark.parametrize("e,p,n", CONFIGS)
def test_averaging_projector_rank(e, p, n):
    mu = averaging_projector(shift(e, p, n), p)
    assert mu.ok
    P, _, _ = setup(e, p, n)
    assert mu.rank == fixed_point_count(P.r, p, n)


@pytest.mark.parametrize("variant", ["BMR", "AR"])
@pytest.mark.parametrize("e,p,n", [(2, 2, 2), (2, 3, 2), (3, 3, 2), (2, 4, 2), (2, 2, 3)])
def test_phi_lands_on_the_fixed_points(e, p, n, variant):
    _, vl, _ = setup(e, p, n)
    mu = averaging_projector(shift(e, p, n), p)
    phi = phi_images(hecke(e, p, n), vl, mu, variant)
    assert all(phi.residuals.values())
    assert phi.equals_fixed_points and phi.dimension == mu.rank


@pytest.mark.parametrize("e,p,n", [(2, 2, 2), (2, 3, 2), (3, 3, 2), (2, 2, 3)])
def test_intertwining_dichotomy(e, p, n):
    sh = shift(e, p, n)
    assert verify_intertwining(images(e, p, n, SW), sh)["ok"]
    bk = verify_intertwining(images(e, p, n, BK), sh)
    quiver = hecke(e, p, n).quiver
    double_edges_only = all(adjacency(u, w, quiver) == BOTH for u, w in quiver.edges())
    assert bk["ok"] == double_edges_only
    assert bk["summary"]["idempotent"]["failed"] == 0 and bk["summary"]["y"]["failed"] == 0
    if not double_edges_only:
        assert bk["summary"]["psi"]["failed"] == bk["summary"]["psi"]["checked"]


@pytest.mark.parametrize("cfg", sorted(FIXED_GRADED))
def test_fixed_presentation_graded_dimension(cfg):
    P, _, lam = setup(*cfg)
    out = fixed_presentation_check(P, lam, expected=fixed_point_count(P.r, cfg[1], cfg[2]))
    assert out["ok"]
    assert dict(out["graded_dimension"]) == FIXED_GRADED[cfg]


@pytest.mark.parametrize("cfg", sorted(FIXED_GRADED))
def test_graded_subalgebra(cfg):
    e, p, n = cfg
    P, _, lam = setup(*cfg)
    fixed = fixed_presentation_check(P, lam)["graded_dimension"]
    full = klr_dimension(P, lam)["graded_dimension"]
    sectors = shift_sectors(shift(*cfg), P.zeta, p)
    report = graded_subalgebra_check(fixed, full, sectors, hecke(*cfg).dim)
    assert report["ok"], report


def test_sectors_split_evenly_for_p_two():
    P, _, _ = setup(2, 2, 2)
    assert shift_sectors(shift(2, 2, 2), P.zeta, 2) == [4, 4]


def test_graded_subalgebra_negative_control():
    bigger = LaurentPoly({0: 9})
    report = graded_subalgebra_check(bigger, LaurentPoly({0: 8}), [4, 4], 8)
    assert not report["ok"] and not report["dominated"]


def test_independence_of_q():
    P, vl, _ = setup(3, 3, 2)
    out = independence_of_q_check(3, 3, 1, 2, vl, P.field)
    assert out["status"] == "pass" and out["identical_presentations"]
    assert [r["q"] for r in out["runs"]] == [2, 4]
    assert all(r["dimension"] == 6 for r in out["runs"])


def test_independence_needs_several_q():
    P, vl, _ = setup(2, 2, 2)
    assert independence_of_q_check(2, 2, 1, 2, vl, P.field)["status"] == "skip"


def test_p_one_inversion():
    P, vl, _ = setup(2, 1, 2)
    report = appendix_checks(P, vl, hecke(2, 1, 2))
    assert report["ok"] and report["inversion"]["status"] == "pass"
    assert report["inversion"]["dim_grpn"] == report["inversion"]["dim_hecke"]


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_bracket_identity(p):
    P, vl, _ = setup(2, p, 2)
    report = appendix_checks(P, vl, hecke(2, p, 2))
    assert report["bracket_identity"]["status"] == "pass"
    assert report["variants"]["status"] == "pass"
    dims = report["variants"]["dimensions"]
    assert dims["BMR"] == dims["AR"] == fixed_point_count(P.r, p, 2)


def test_bracket_identity_detects_a_wrong_image():
    H = hecke(2, 3, 2)
    imgs = dict(grpn_images(H))
    # both sides are linear in s, so perturb t1' instead
    imgs["t1'"] = H.S * H.T[0] * imgs["t1'"] * H.S
    lhs, rhs = bracket_identity_sides(imgs, H.params.q, 3)
    assert lhs != rhs
