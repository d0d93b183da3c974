from hypothesis import given, strategies as st

from workbench.scalars import PrimeField
from workbench.series import Series

F = PrimeField(7)
N, D = 2, 5

terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(0, 6), max_size=5)


def series(t, c0=None):
    s = Series(F, N, D, t)
    if c0 is not None:
        s = s + (c0 - s.constant())
    return s


@given(terms, st.integers(1, 6))
def test_inverse_is_two_sided(t, c0):
    s = series(t, c0)
    one = Series.one(F, N, D)
    assert s * s.inverse() == one
    assert s.inverse() * s == one


@given(terms, terms)
def test_swap_is_a_ring_involution(a, b):
    x, y = series(a), series(b)
    assert (x * y).swap(1, 2) == x.swap(1, 2) * y.swap(1, 2)
    assert x.swap(1, 2).swap(1, 2) == x


def test_truncation_and_geometric_series():
    y1 = Series.var(F, N, D, 1)
    inv = (Series.one(F, N, D) - y1).inverse()
    # 1/(1 - y1) is the geometric series, cut at the truncation degree
    assert inv == sum(_powers(y1, D), Series(F, N, D))
    assert (y1 * _powers(y1, D)[-1]).is_zero()


def _powers(x, k):
    out = [Series.one(F, N, D)]
    for _ in range(k):
        out.append(out[-1] * x)
    return out


def test_zero_constant_is_not_invertible():
    import pytest
    with pytest.raises(ZeroDivisionError):
        Series.var(F, N, D, 2).inverse()
