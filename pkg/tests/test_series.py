import cmath

from hypothesis import given
from hypothesis import strategies as st

from honeycomb_mbc.series import Series2

cx = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
series = st.builds(Series2, cx, cx, cx)


def test_exp_i_matches_taylor():
    s = Series2.exp_i(2.0)
    x = 1e-3
    assert abs(s(x) - cmath.exp(2j * x)) < 1e-8


def test_scalar_coercion():
    s = Series2.var()
    assert (2 * s + 1).coeffs == (1, 2, 0)
    assert (1 - s).coeffs == (1, -1, 0)


@given(series, series)
def test_product_truncates_exact_product(a, b):
    # full product polynomial, then drop x^3 and x^4
    full = [0j] * 5
    for i, u in enumerate(a.coeffs):
        for j, v in enumerate(b.coeffs):
            full[i + j] += u * v
    assert (a * b).isclose(Series2(*full[:3]), tol=1e-9)


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert (a * b).isclose(b * a, 1e-9)
    assert (a * (b + c)).isclose(a * b + a * c, 1e-8)
    assert (a - a).isclose(Series2(), 1e-12)
