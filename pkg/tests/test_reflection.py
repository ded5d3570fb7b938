import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from honeycomb_mbc.design import DesignSpec, builtin_stencil, solve_mbc
from honeycomb_mbc.dispersion import Branch
from honeycomb_mbc.reflection import (
    OBLIQUE_SLOPE,
    ReflectionError,
    loglog_slope,
    reflect_points,
    reflection_coefficient,
    sample_rows,
    scan_grid,
    scan_ray,
)
from oracles import naive_reflection

MBC1_AT_Q1 = 0.046304083872405824  # |R| of the exact MBC1 at (0, 1.0)


def long_wave_slope(stencil):
    q = np.geomspace(0.02, 0.2, 40)
    return loglog_slope(q, [abs(reflection_coefficient(stencil, 0.0, x)) for x in q])


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_long_wave_slope(order):
    assert long_wave_slope(solve_mbc(order)) >= 1.9


@pytest.mark.parametrize("order", [2, 3, 4, 5])
def test_matched_points_are_nulls(order):
    s = solve_mbc(order)
    for k in s.matched_wavevectors:
        assert abs(reflection_coefficient(s, k.xi_p, k.xi_q)) < 1e-6


def test_oblique_null_of_tan30_variant():
    s = solve_mbc(DesignSpec(5, ((0, 0.5), (0, 1.0), (0, 2.4), (0, 3.0), (math.tan(math.pi / 6), 1.0))))
    assert abs(reflection_coefficient(s, math.tan(math.pi / 6), 1.0)) < 1e-6


def test_mbc1_golden_value_two_routes():
    s = solve_mbc(1)
    got = abs(reflection_coefficient(s, 0.0, 1.0))
    assert got == pytest.approx(abs(naive_reflection(1, s.params, 0.0, 1.0)), rel=1e-12)
    assert got == pytest.approx(MBC1_AT_Q1, rel=1e-9)


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_reflection_matches_naive_oracle(order):
    s = solve_mbc(order)
    rng = np.random.default_rng(10 + order)
    for p, q in zip(rng.uniform(-1.5, 1.5, 25), rng.uniform(0.05, 1.7, 25)):
        assert reflection_coefficient(s, p, q, 1) == pytest.approx(naive_reflection(order, s.params, p, q), rel=1e-9)


def test_table_mbc5_at_matched_normal_point():
    assert abs(reflection_coefficient(builtin_stencil(5), 0.0, 3.0)) < 1e-3
    assert abs(reflection_coefficient(solve_mbc(5), 0.0, 3.0)) < 1e-6


def test_mbc4_normal_ray_dips():
    samples = scan_ray(solve_mbc(4), "normal", (0.3, 2.6), 2301)
    q = np.array([s.k.xi_q for s in samples])
    r = np.array([s.modulus for s in samples])
    for q0 in (0.5, 1.0, 2.4):
        near = np.abs(q - q0) < 0.15
        k = np.argmin(np.where(near, r, np.inf))
        assert abs(q[k] - q0) < 2e-3 and r[k] < 1e-5


def test_oblique_worse_than_normal():
    s = solve_mbc(1)
    normal = [x.modulus for x in scan_ray(s, "normal", (0.1, 1.5), 141)]
    oblique = [x.modulus for x in scan_ray(s, "oblique30", (0.1, 1.5), 141)]
    assert np.mean(oblique) >= np.mean(normal)


@given(st.floats(0.01, 1.5), st.floats(0.05, 1.8), st.integers(1, 5))
def test_mirror_symmetry(p, q, order):
    s = solve_mbc(order)
    _, R = reflect_points(s, [p, -p], [q, q])
    assert abs(abs(R[0]) - abs(R[1])) <= 1e-10 * max(1.0, abs(R[0]))


def test_long_wave_limit_vanishes():
    for order in range(1, 6):
        r = [x.modulus for x in scan_ray(solve_mbc(order), "normal", (1e-3, 0.01), 10)]
        assert max(r) < 1e-3


def test_single_point_grid_equals_point_value():
    s = solve_mbc(3)
    (sample,) = scan_grid(s, (0.3, 0.3), 1, (0.7, 0.7), 1)
    assert sample.R == pytest.approx(reflection_coefficient(s, 0.3, 0.7), rel=1e-14)
    assert sample.modulus == abs(sample.R)


def test_grid_is_row_major_and_skips_outside():
    s = solve_mbc(2)
    samples = scan_grid(s, (-3.0, 3.0), 31, (-3.6, 3.6), 31)
    assert len(samples) < 31 * 31
    qs = [x.k.xi_q for x in samples]
    assert qs == sorted(qs)
    assert {x.branch for x in samples} == {Branch.ACOUSTIC, Branch.OPTICAL}


def test_gamma_is_undefined():
    with pytest.raises(ReflectionError):
        reflection_coefficient(solve_mbc(1), 0.0, 0.0)
    (sample,) = scan_grid(solve_mbc(1), (0, 0), 1, (0, 0), 1)
    assert math.isnan(sample.modulus)
    assert sample_rows([sample])[0]["abs_R"] != sample_rows([sample])[0]["abs_R"]


def test_threads_do_not_change_output():
    s = solve_mbc(5)
    one = scan_grid(s, (-2, 2), 41, (0, 2), 37, threads=1)
    four = scan_grid(s, (-2, 2), 41, (0, 2), 37, threads=4)
    np.testing.assert_array_equal([x.R for x in one], [x.R for x in four])
    assert [x.k for x in one] == [x.k for x in four]


def test_oblique_ray_parameterisation():
    samples = scan_ray(solve_mbc(1), "oblique30", (0.5, 1.0), 3)
    assert [x.k.xi_p for x in samples] == pytest.approx([OBLIQUE_SLOPE * q for q in (0.5, 0.75, 1.0)])
    with pytest.raises(ValueError):
        scan_ray(solve_mbc(1), "sideways", (0, 1), 3)
    with pytest.raises(ValueError):
        scan_grid(solve_mbc(1), (0, 1), 0, (0, 1), 3)
