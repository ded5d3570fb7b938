"""Dispersion relation, mode amplitudes and group velocity.

Plane waves are ``v ~ A1 exp(i(wt + p n + sqrt3 q m))``, ``w ~ A2 exp(...)``
with wavevector ``(p, q)``. All functions broadcast over array inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

SQRT3 = math.sqrt(3.0)
RADICAND_GUARD = 1e-12
SINGULAR_TOL = 1e-10


class Branch(enum.IntEnum):
    ACOUSTIC = 1
    OPTICAL = 2


class Zone(str, enum.Enum):
    REDUCED = "reduced"
    OPTICAL = "optical"
    OUTSIDE = "outside"


class DispersionError(ValueError):
    pass


@dataclass(frozen=True)
class WaveVector:
    xi_p: float
    xi_q: float

    def __iter__(self):
        return iter((self.xi_p, self.xi_q))

    def __str__(self) -> str:
        return f"({self.xi_p:g}, {self.xi_q:g})"


def radicand(p, q):
    cp = np.cos(p)
    return 1.0 + 4.0 * cp * np.cos(SQRT3 * q) + 4.0 * cp * cp


def _sqrt_radicand(p, q):
    F = radicand(p, q)
    if np.any(F < -RADICAND_GUARD):
        raise DispersionError(f"negative radicand {np.min(F)!r}")
    return np.sqrt(np.maximum(F, 0.0))


def omega(p, q, branch: int = Branch.ACOUSTIC):
    s = -1.0 if int(branch) == Branch.ACOUSTIC else 1.0
    w2 = 3.0 + s * _sqrt_radicand(p, q)
    return np.sqrt(np.maximum(w2, 0.0))


def amplitudes(p, q, branch: int = Branch.ACOUSTIC):
    """Unnormalised eigenvector ``(A1, A2)`` of the 2x2 dynamical matrix."""
    w = omega(p, q, branch)
    A1 = 1.0 + 2.0 * np.cos(p) * np.exp(1j * SQRT3 * np.asarray(q, dtype=float))
    A2 = 3.0 - w * w
    return A1, A2


def group_velocity(p, q, branch: int = Branch.ACOUSTIC):
    """Analytic gradient of omega; raises at Dirac points and at the acoustic Gamma point."""
    F = radicand(p, q)
    w = omega(p, q, branch)
    if np.any(F <= SINGULAR_TOL) or np.any(w <= SINGULAR_TOL):
        raise DispersionError(f"group velocity is singular at ({p}, {q}) branch {int(branch)}")
    denom = w * (3.0 - w * w)
    cp, sp = np.cos(p), np.sin(p)
    c3, s3 = np.cos(SQRT3 * q), np.sin(SQRT3 * q)
    vp = (8.0 * cp * sp + 4.0 * c3 * sp) / (4.0 * denom)
    vq = SQRT3 * s3 * cp / denom
    return vp, vq


# Unit normals of the hexagram's two large triangles; each triangle is
# {k : k . n <= pi/sqrt3 for its three normals}. The reduced zone is their
# intersection and the hexagram their union.
_T1 = [(math.cos(a), math.sin(a)) for a in np.radians([-90.0, 30.0, 150.0])]
_T2 = [(math.cos(a), math.sin(a)) for a in np.radians([90.0, -30.0, -150.0])]
_HALF = math.pi / SQRT3
_TIE = 1e-12


def _in_triangle(p, q, normals):
    inside = np.ones(np.broadcast(p, q).shape, dtype=bool)
    for cx, cy in normals:
        inside &= p * cx + q * cy <= _HALF + _TIE
    return inside


def in_reduced_zone(p, q):
    p, q = np.abs(p), np.abs(q)
    return (SQRT3 * p + q <= 2.0 * math.pi / SQRT3 + _TIE) & (q <= _HALF + _TIE)


def in_hexagram(p, q):
    return _in_triangle(p, q, _T1) | _in_triangle(p, q, _T2)


def zone_membership(p: float, q: float) -> Zone:
    if in_reduced_zone(p, q):
        return Zone.REDUCED
    if in_hexagram(p, q):
        return Zone.OPTICAL
    return Zone.OUTSIDE


def branch_for(p: float, q: float) -> Branch:
    """Extended-zone rule: acoustic inside the reduced zone, optical in the star tips."""
    z = zone_membership(p, q)
    if z is Zone.OUTSIDE:
        raise DispersionError(f"wavevector ({p}, {q}) lies outside the extended zone")
    return Branch.ACOUSTIC if z is Zone.REDUCED else Branch.OPTICAL


def branch_grid(p, q):
    """Vectorised branch_for: 1, 2, or 0 for outside."""
    red = in_reduced_zone(p, q)
    star = in_hexagram(p, q)
    return np.where(red, 1, np.where(star, 2, 0))


@dataclass(frozen=True)
class DispersionPoint:
    k: WaveVector
    branch: Branch
    omega: float
    A1: complex
    A2: float


def dispersion_point(p: float, q: float, branch: int | None = None) -> DispersionPoint:
    b = branch_for(p, q) if branch is None else Branch(branch)
    A1, A2 = amplitudes(p, q, b)
    return DispersionPoint(WaveVector(p, q), b, float(omega(p, q, b)), complex(A1), float(A2))


def max_group_speed(n: int = 401) -> float:
    """Largest |grad omega| over both branches on an n x n grid of the reduced zone."""
    p = np.linspace(-2 * math.pi / 3, 2 * math.pi / 3, n)
    q = np.linspace(-_HALF, _HALF, n)
    P, Q = np.meshgrid(p, q)
    keep = in_reduced_zone(P, Q) & (radicand(P, Q) > 1e-6) & (np.hypot(P, Q) > 1e-6)
    P, Q = P[keep], Q[keep]
    best = 0.0
    for b in Branch:
        vp, vq = group_velocity(P, Q, b)
        best = max(best, float(np.max(np.hypot(vp, vq))))
    return best


def dispersion_grid(p_range, q_range, p_steps: int, q_steps: int, with_velocity: bool = False):
    """Row-major grid records for the ``dispersion`` subcommand."""
    rows = []
    for q in np.linspace(q_range[0], q_range[1], q_steps):
        for p in np.linspace(p_range[0], p_range[1], p_steps):
            rec = {
                "xi_p": float(p),
                "xi_q": float(q),
                "omega_acoustic": float(omega(p, q, 1)),
                "omega_optical": float(omega(p, q, 2)),
            }
            if with_velocity:
                for b, tag in ((1, "acoustic"), (2, "optical")):
                    try:
                        vp, vq = group_velocity(p, q, b)
                    except DispersionError:
                        vp = vq = float("nan")
                    rec[f"vg_p_{tag}"] = float(vp)
                    rec[f"vg_q_{tag}"] = float(vq)
            rows.append(rec)
    return rows
