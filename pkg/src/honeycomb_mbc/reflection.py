"""Reflection coefficient of a bottom-edge MBC and scans over wavevectors."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .design import MbcStencil, residual
from .dispersion import Branch, WaveVector, branch_for, branch_grid

DEGENERATE = 1e-14
OBLIQUE_SLOPE = math.tan(math.pi / 6)


class ReflectionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ReflectionSample:
    k: WaveVector
    branch: Branch
    R: complex

    @property
    def modulus(self) -> float:
        return abs(self.R)


def reflection_coefficient(stencil: MbcStencil, p: float, q: float, branch: int | None = None) -> complex:
    """R = -Delta(p, q) / Delta(p, -q)."""
    if branch is None:
        branch = branch_for(p, q)
    den = complex(residual(stencil, p, -q, branch))
    if abs(den) <= DEGENERATE:
        raise ReflectionError(f"degenerate denominator at ({p}, {q})")
    return -complex(residual(stencil, p, q, branch)) / den


def _reflect_arrays(stencil, p, q, branch):
    """Vectorised R for one branch; nan where the denominator degenerates."""
    num = residual(stencil, p, q, branch)
    den = residual(stencil, p, -q, branch)
    bad = np.abs(den) <= DEGENERATE
    with np.errstate(divide="ignore", invalid="ignore"):
        R = -num / np.where(bad, 1.0, den)
    return np.where(bad, np.nan + 0j, R)


def reflect_points(stencil: MbcStencil, p, q, threads: int = 1):
    """R at arbitrary points; branch by zone, Outside points give branch 0 and nan.

    Returns (branch array, complex R array). Output order never depends on
    ``threads``.
    """
    p = np.atleast_1d(np.asarray(p, dtype=float))
    q = np.atleast_1d(np.asarray(q, dtype=float))
    p, q = np.broadcast_arrays(p, q)
    shape = p.shape
    p, q = p.ravel(), q.ravel()
    br = branch_grid(p, q)
    R = np.full(p.shape, np.nan + 0j)

    def work(idx):
        for b in (1, 2):
            sel = idx[br[idx] == b]
            if sel.size:
                R[sel] = _reflect_arrays(stencil, p[sel], q[sel], b)

    chunks = np.array_split(np.arange(p.size), max(1, min(threads, p.size)))
    if len(chunks) > 1:
        with ThreadPoolExecutor(len(chunks)) as ex:
            list(ex.map(work, chunks))
    else:
        work(chunks[0])
    return br.reshape(shape), R.reshape(shape)


def _samples(p, q, br, R) -> list[ReflectionSample]:
    out = []
    for pi, qi, bi, ri in zip(p.ravel(), q.ravel(), br.ravel(), R.ravel()):
        if bi == 0:
            continue
        out.append(ReflectionSample(WaveVector(float(pi), float(qi)), Branch(int(bi)), complex(ri)))
    return out


def scan_grid(
    stencil: MbcStencil,
    p_range: tuple[float, float],
    p_steps: int,
    q_range: tuple[float, float],
    q_steps: int,
    threads: int = 1,
) -> list[ReflectionSample]:
    """Row-major (q outer, p inner) samples; points outside the star are skipped."""
    if p_steps < 1 or q_steps < 1:
        raise ValueError("grid must be nonempty")
    ps = np.linspace(p_range[0], p_range[1], p_steps)
    qs = np.linspace(q_range[0], q_range[1], q_steps)
    P, Q = np.meshgrid(ps, qs)
    br, R = reflect_points(stencil, P, Q, threads)
    return _samples(P, Q, br, R)


def ray_points(direction: str, q_range: tuple[float, float], steps: int):
    qs = np.linspace(q_range[0], q_range[1], steps)
    if direction == "normal":
        return np.zeros_like(qs), qs
    if direction == "oblique30":
        return OBLIQUE_SLOPE * qs, qs
    raise ValueError(f"unknown ray direction {direction!r}; use 'normal' or 'oblique30'")


def scan_ray(
    stencil: MbcStencil, direction: str, q_range: tuple[float, float], steps: int, threads: int = 1
) -> list[ReflectionSample]:
    p, q = ray_points(direction, q_range, steps)
    br, R = reflect_points(stencil, p, q, threads)
    return _samples(p, q, br, R)


def sample_rows(samples: list[ReflectionSample]) -> list[dict]:
    return [
        {"xi_p": s.k.xi_p, "xi_q": s.k.xi_q, "branch": int(s.branch), "abs_R": s.modulus}
        for s in samples
    ]


def loglog_slope(x, y) -> float:
    """Least-squares slope of log y against log x."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])
