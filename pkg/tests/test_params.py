import math

import pytest
from hypothesis import given, strategies as st

from oracles import pprime_eta
from workbench.params import (ParamsError, Weight, check_sigma_stable, collapse_weight, collapse_weight_i,
                              derive_params, expand_weight, fiber_count, hecke_weight)
from workbench.scalars import INF, find_prime_field, rational_field_spec


@pytest.mark.parametrize("e,p,expected", [(2, 3, (3, 0, 1)), (2, 6, (3, 1, 2)), (3, 3, (1, 1, 3)),
                                          (3, 2, (2, 0, 1)), (2, 2, (1, 1, 2))])
def test_worked_cases(e, p, expected):
    P = derive_params(e, p, 1, 2, find_prime_field(e, p))
    assert (P.pprime, P.eta, P.omega) == expected


def test_infinite_e():
    P = derive_params(INF, 2, 1, 2, rational_field_spec(2, 2))
    assert (P.pprime, P.eta, P.omega) == (2, 0, 1)


@given(st.sampled_from([(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 6), (4, 2), (4, 4), (6, 3)]))
def test_pprime_eta_against_brute_force(ep):
    e, p = ep
    spec = find_prime_field(e, p)
    P = derive_params(e, p, 1, 1, spec)
    assert P.pprime == p // math.gcd(p, e)
    assert (P.pprime, P.eta) == pprime_eta(spec.modulus, spec.q, spec.zeta, p)
    assert P.pprime * P.omega == p


def test_mismatched_field_is_refused():
    with pytest.raises(ParamsError):
        derive_params(3, 2, 1, 2, find_prime_field(2, 2))


def test_hecke_weight_levels():
    for e, p in [(2, 2), (2, 3), (3, 3), (2, 6)]:
        P = derive_params(e, p, 1, 2, find_prime_field(e, p))
        lam = hecke_weight(Weight.from_map("I", {0: 1}), P)
        assert lam.level == P.r


def test_three_three_weight_is_all_ones():
    P = derive_params(3, 3, 1, 2, find_prime_field(3, 3))
    lam = collapse_weight_i(Weight.from_map("I", {0: 1}), P)
    assert lam.as_dict() == {0: 1, 1: 1, 2: 1}
    assert check_sigma_stable(lam, P)
    assert not check_sigma_stable(Weight.from_map("I", {0: 1}), P)


def test_wrong_level_is_refused():
    P = derive_params(2, 2, 1, 2, find_prime_field(2, 2))
    with pytest.raises(ParamsError):
        hecke_weight(Weight.from_map("I", {0: 2}), P)


@given(st.dictionaries(st.integers(0, 2), st.integers(0, 3), min_size=1),
       st.dictionaries(st.integers(1, 6), st.integers(0, 2)))
def test_collapse_keeps_level(by_i, by_j):
    P = derive_params(2, 6, 1, 2, find_prime_field(2, 6))
    entries = {(i, j): a * b for i, a in by_i.items() for j, b in by_j.items()}
    lam = Weight.from_map("IxJ", entries)
    assert collapse_weight(lam, P).level == lam.level


def test_expand_then_collapse_is_identity():
    P = derive_params(2, 6, 1, 2, find_prime_field(2, 6))
    lam = Weight.from_map("IxJ'", {(0, 1): 2, (1, 3): 1})
    assert collapse_weight(expand_weight(lam, P), P) == lam


def test_fiber_counts_partition_omega():
    P = derive_params(2, 6, 1, 2, find_prime_field(2, 6))
    assert sum(fiber_count(i, P) for i in range(2)) == P.omega


def test_weight_json_and_validation():
    w = Weight.from_map("IxJ'", {(0, 1): 1, (1, 2): 0})
    assert w.support == [(0, 1)]
    assert Weight.from_json("IxJ'", w.to_json()) == w
    with pytest.raises(ParamsError):
        Weight.from_map("I", {0: -1})
