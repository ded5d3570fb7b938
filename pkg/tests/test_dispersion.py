import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from honeycomb_mbc.dispersion import (
    Branch,
    DispersionError,
    Zone,
    amplitudes,
    branch_for,
    branch_grid,
    dispersion_grid,
    group_velocity,
    in_hexagram,
    in_reduced_zone,
    max_group_speed,
    omega,
    zone_membership,
)
from oracles import dynamical_matrix, fd_gradient, omega_eig

S3 = math.sqrt(3.0)
finite = st.floats(-4.0, 4.0, allow_nan=False)


def test_gamma_point():
    assert omega(0.0, 0.0, Branch.ACOUSTIC) == 0.0
    assert omega(0.0, 0.0, Branch.OPTICAL) == pytest.approx(math.sqrt(6.0), abs=1e-14)


def test_dirac_point_degenerate():
    p, q = 2 * math.pi / 3, 0.0
    assert omega(p, q, 1) == pytest.approx(math.sqrt(3.0), abs=1e-7)
    assert omega(p, q, 2) == pytest.approx(math.sqrt(3.0), abs=1e-7)
    with pytest.raises(DispersionError):
        group_velocity(p, q, 1)


def test_acoustic_gamma_velocity_singular():
    with pytest.raises(DispersionError):
        group_velocity(0.0, 0.0, Branch.ACOUSTIC)


@given(finite, finite)
def test_omega_matches_matrix_eigenvalues(p, q):
    wa, wo = omega_eig(p, q)
    assert omega(p, q, 1) == pytest.approx(wa, abs=1e-7)
    assert omega(p, q, 2) == pytest.approx(wo, abs=1e-7)


@given(finite, finite)
def test_branches_ordered_and_bounded(p, q):
    wa, wo = omega(p, q, 1), omega(p, q, 2)
    assert 0.0 <= wa <= math.sqrt(3.0) + 1e-12 <= wo + 2e-12
    assert wo <= math.sqrt(6.0) + 1e-12


@given(finite, finite)
def test_amplitudes_are_eigenvectors(p, q):
    for b in (1, 2):
        A1, A2 = amplitudes(p, q, b)
        vec = np.array([A1, A2])
        if np.linalg.norm(vec) < 1e-6:
            continue
        w2 = omega(p, q, b) ** 2
        assert np.allclose(dynamical_matrix(p, q) @ vec, w2 * vec, atol=1e-8 * (1 + np.linalg.norm(vec)))


def test_group_velocity_matches_finite_differences_100_points():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 100:
        p, q = rng.uniform(-math.pi, math.pi, 2)
        for b in (1, 2):
            try:
                vp, vq = group_velocity(p, q, b)
            except DispersionError:
                continue
            if min(omega(p, q, 1), abs(omega(p, q, 2) - omega(p, q, 1))) < 1e-2:
                continue
            fp, fq = fd_gradient(lambda x, y: float(omega(x, y, b)), p, q)
            assert vp == pytest.approx(fp, abs=1e-6)
            assert vq == pytest.approx(fq, abs=1e-6)
            checked += 1


def test_long_wave_speed_is_one():
    for q in (1e-2, 1e-3, 1e-4):
        vq = group_velocity(0.0, q, 1)[1]
        assert abs(vq - 1.0) < 2 * q
    assert group_velocity(0.0, 1e-4, 1)[1] == pytest.approx(1.0, abs=1e-6)


def test_optical_vertical_velocity_peak_location():
    # signed vertical component over the upper star tip
    q = np.linspace(math.pi / S3 + 0.01, 2 * math.pi / S3 - 0.05, 4000)
    vq = group_velocity(0.0, q, 2)[1]
    k = int(np.argmax(vq))
    assert 0 < k < len(q) - 1
    assert 2.2 <= q[k] <= 2.6


def test_max_group_speed_bounded_by_one():
    c = max_group_speed()
    assert 0.99 < c <= 1.0 + 1e-9


def test_zones_examples():
    assert zone_membership(0.0, 0.0) is Zone.REDUCED
    assert branch_for(0.0, 0.5) is Branch.ACOUSTIC
    # star tip above the reduced zone: optical
    assert branch_for(0.0, 2.4) is Branch.OPTICAL
    assert branch_for(0.0, 3.0) is Branch.OPTICAL
    with pytest.raises(DispersionError):
        branch_for(3.0, 3.0)


@given(finite, finite)
def test_reduced_zone_is_inside_hexagram(p, q):
    if in_reduced_zone(p, q):
        assert in_hexagram(p, q)


@given(finite, finite)
def test_zones_have_sixfold_symmetry(p, q):
    a = math.radians(60.0)
    p2, q2 = p * math.cos(a) - q * math.sin(a), p * math.sin(a) + q * math.cos(a)
    # skip points on a zone boundary, where rounding can flip membership
    if min(_edge_distance(p, q), _edge_distance(p2, q2)) < 1e-9:
        return
    assert in_hexagram(p, q) == in_hexagram(p2, q2)
    assert in_reduced_zone(p, q) == in_reduced_zone(p2, q2)


def _edge_distance(p, q):
    d = []
    for deg in range(-150, 181, 60):
        c, s = math.cos(math.radians(deg)), math.sin(math.radians(deg))
        d.append(abs(p * c + q * s - math.pi / S3))
    for deg in range(0, 360, 60):
        c, s = math.cos(math.radians(deg)), math.sin(math.radians(deg))
        d.append(abs(p * c + q * s - math.pi / S3))
    return min(d)


def test_reduced_zone_is_half_the_hexagram_area():
    g = np.linspace(-4, 4, 801)
    P, Q = np.meshgrid(g, g)
    red = in_reduced_zone(P, Q).sum()
    star = in_hexagram(P, Q).sum()
    assert red / star == pytest.approx(0.5, rel=0.01)


def test_branch_grid_codes():
    assert list(branch_grid(np.array([0.0, 0.0, 3.0]), np.array([0.5, 3.0, 3.0]))) == [1, 2, 0]


def test_dispersion_grid_rows():
    rows = dispersion_grid((0, 1), (0, 1), 3, 2, with_velocity=True)
    assert len(rows) == 6
    assert rows[0]["xi_p"] == 0 and rows[1]["xi_p"] == 0.5 and rows[3]["xi_q"] == 1
    assert math.isnan(rows[0]["vg_p_acoustic"])
