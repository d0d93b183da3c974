from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import order_mod, smallest_field
from workbench.scalars import (INF, FieldError, FieldSearchError, FieldSpec, PrimeField, element_order,
                               find_prime_field, is_prime, rational_field_spec)

F7 = PrimeField(7)


@pytest.mark.parametrize("e,p,expected", [
    ((2, 3), None, (7, 6, 2)),
    ((2, 2), None, (3, 2, 2)),
    ((3, 3), None, (7, 2, 2)),
])
def test_smallest_prime_field_frozen(e, p, expected):
    spec = find_prime_field(*e)
    assert (spec.modulus, spec.q, spec.zeta) == expected


@pytest.mark.parametrize("e,p", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (4, 2), (5, 3)])
def test_prime_field_search_matches_scan(e, p):
    spec = find_prime_field(e, p)
    assert (spec.modulus, spec.q, spec.zeta) == smallest_field(e, p)


def test_two_six_lands_in_gf7():
    assert find_prime_field(2, 6).modulus == 7


def test_search_bound_is_reported():
    with pytest.raises(FieldSearchError):
        find_prime_field(3, 5, max_prime=20)


def test_infinite_e_has_no_prime_field():
    with pytest.raises(FieldError):
        find_prime_field(INF, 2)


@given(st.integers(1, 6), st.integers(1, 6))
def test_inverse_and_division(a, b):
    assert F7.mul(a, F7.inv(a)) == 1
    assert F7.mul(F7.div(a, b), b) == F7(a)


@given(st.integers(1, 6), st.integers(-10, 10), st.integers(-10, 10))
def test_power_laws(a, m, k):
    assert F7.mul(F7.pow(a, m), F7.pow(a, k)) == F7.pow(a, m + k)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


@given(st.integers(1, 6))
def test_element_order_matches_scan(x):
    assert element_order(x, F7) == order_mod(x, 7)


def test_is_prime_small():
    assert [m for m in range(20) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_fieldspec_validates_orders():
    with pytest.raises(FieldError):
        FieldSpec("prime", 7, 2, 6, 2, 2)  # 2 has order 3 in GF(7)
    with pytest.raises(FieldError):
        FieldSpec("prime", 3, 2, 1, 2, 3)  # characteristic divides p


def test_rationals():
    spec = rational_field_spec(2, 2)
    assert spec.e == INF and spec.zeta == Fraction(-1)
    F = spec.field
    assert F.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(FieldError):
        rational_field_spec(2, 3)


def test_fieldspec_json_roundtrip():
    spec = find_prime_field(3, 3)
    assert FieldSpec.from_json(spec.to_json()) == spec
    rat = rational_field_spec(3, 2)
    assert FieldSpec.from_json(rat.to_json()) == rat
