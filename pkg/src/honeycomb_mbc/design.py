"""Matching boundary condition (MBC) design for the bottom zigzag edge.

An MBC of order r ties the anchor ``v[n,1]`` to a few nearby atoms:

    vdot[n,1] + sum b * udot(atom) = sum c * u(atom)

Coefficients are mirror symmetric in the column offset, so each order has a
small set of symmetry-reduced unknowns (``b11``, ``c00``, ...). They are fixed
by three long-wave Taylor conditions plus a Re/Im pair per matched
wavevector, giving a square real linear system.

Coefficient storage is per atom ("effective" values): the centre atom of the
``b23`` row, which enters with weight 2, stores ``2 * b23``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dispersion import WaveVector, amplitudes, branch_for, omega
from .lattice import (
    EDGE_MISSING,
    EDGE_ROTATION,
    AtomId,
    Edge,
    Lattice,
    SublatticeId,
    position,
    site_at,
)
from .series import Series2

SQRT3 = math.sqrt(3.0)
V, W = SublatticeId.V, SublatticeId.W
COND_LIMIT = 1e12


class DesignError(ValueError):
    pass


class StencilOutsideDomain(DesignError):
    pass


@dataclass(frozen=True, order=True)
class StencilAtom:
    """Bottom-edge stencil site: column offset ``i`` and absolute row."""

    row: int
    sublattice: SublatticeId
    col_offset: int

    @property
    def j(self) -> int:
        return 2 * self.row - 3 if self.sublattice is W else 2 * self.row - 2

    @property
    def is_anchor(self) -> bool:
        return self.sublattice is V and self.row == 1 and self.col_offset == 0

    def rel_position(self) -> tuple[float, float]:
        x, y = position(AtomId(self.sublattice, self.col_offset, self.row))
        return x, y - SQRT3

    def __str__(self) -> str:
        return f"{self.sublattice.label}[n{self.col_offset:+d},{self.row}]"


ANCHOR = StencilAtom(1, V, 0)


@dataclass(frozen=True)
class CoefficientGroup:
    """Atoms sharing one symmetry-reduced coefficient, with their weights."""

    label: str
    sublattice: SublatticeId
    members: tuple[tuple[int, int, int], ...]  # (col_offset, row, weight)

    def atoms(self):
        for i, row, wt in self.members:
            yield StencilAtom(row, self.sublattice, i), wt


GROUPS = {
    "00": CoefficientGroup("00", V, ((0, 1, 1),)),
    "11": CoefficientGroup("11", W, ((-1, 2, 1), (1, 2, 1))),
    "12": CoefficientGroup("12", V, ((-1, 2, 1), (1, 2, 1))),
    "23": CoefficientGroup("23", W, ((-2, 3, 1), (0, 3, 2), (2, 3, 1))),
    "24": CoefficientGroup("24", V, ((-2, 3, 1), (0, 3, 2), (2, 3, 1))),
    "15": CoefficientGroup("15", W, ((-1, 4, 1), (1, 4, 1))),
    "35": CoefficientGroup("35", W, ((-3, 4, 1), (3, 4, 1))),
}

_LAYERS = ["11", "12", "23", "24", "15", "35"]
# order -> number of non-anchor groups used
_NGROUPS = {1: 1, 2: 2, 3: 3, 4: 4, 5: 6}
ORDERS = tuple(_NGROUPS)


def shape(order: int) -> tuple[list[str], list[str]]:
    """Labels of the b-groups and c-groups of an order."""
    if order not in _NGROUPS:
        raise DesignError(f"unknown MBC order {order!r}; expected one of {ORDERS}")
    b = _LAYERS[: _NGROUPS[order]]
    return b, ["00"] + b


def unknowns(order: int) -> list[str]:
    b, c = shape(order)
    return [f"b{g}" for g in b] + [f"c{g}" for g in c]


TAN30_OBLIQUE = WaveVector(math.tan(math.pi / 6), 1.0)
OBLIQUE_POINT = WaveVector(0.5, 1.0)

DEFAULT_WAVEVECTORS: dict[int, tuple[WaveVector, ...]] = {
    1: (),
    2: (WaveVector(0.0, 0.5),),
    3: (WaveVector(0.0, 0.5), WaveVector(0.0, 1.0)),
    4: (WaveVector(0.0, 0.5), WaveVector(0.0, 1.0), WaveVector(0.0, 2.4)),
    # order 5 uses (0.5, 1) as its oblique point; TAN30_MBC5_WAVEVECTORS
    # swaps in (tan 30deg, 1) for the variant on the 30 degree ray.
    5: (
        WaveVector(0.0, 0.5),
        WaveVector(0.0, 1.0),
        OBLIQUE_POINT,
        WaveVector(0.0, 2.4),
        WaveVector(0.0, 3.0),
    ),
}
TAN30_MBC5_WAVEVECTORS = tuple(
    TAN30_OBLIQUE if k == OBLIQUE_POINT else k for k in DEFAULT_WAVEVECTORS[5]
)


@dataclass(frozen=True)
class DesignSpec:
    order: int
    matched_wavevectors: tuple[WaveVector, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "matched_wavevectors", tuple(WaveVector(*k) for k in self.matched_wavevectors)
        )
        n_unknown = len(unknowns(self.order))
        if 3 + 2 * len(self.matched_wavevectors) != n_unknown:
            raise DesignError(
                f"MBC{self.order} has {n_unknown} unknowns; needs "
                f"{(n_unknown - 3) // 2} matched wavevectors, got {len(self.matched_wavevectors)}"
            )

    @classmethod
    def default(cls, order: int) -> "DesignSpec":
        shape(order)
        return cls(order, DEFAULT_WAVEVECTORS[order])


@dataclass
class MbcStencil:
    """Coefficients of one MBC order in bottom-edge orientation."""

    order: int
    params: dict[str, float]
    edge: Edge = Edge.BOTTOM
    matched_wavevectors: tuple[WaveVector, ...] = ()
    max_residual: float = float("nan")

    def __post_init__(self):
        missing = set(unknowns(self.order)) - set(self.params)
        if missing:
            raise DesignError(f"missing coefficients {sorted(missing)} for MBC{self.order}")

    @cached_property
    def _expanded(self):
        bgroups, cgroups = shape(self.order)
        b: dict[StencilAtom, float] = {ANCHOR: 1.0}
        c: dict[StencilAtom, float] = {}
        for g in bgroups:
            for a, wt in GROUPS[g].atoms():
                b[a] = b.get(a, 0.0) + wt * self.params[f"b{g}"]
        for g in cgroups:
            for a, wt in GROUPS[g].atoms():
                c[a] = c.get(a, 0.0) + wt * self.params[f"c{g}"]
        atoms = sorted(set(b) | set(c))
        return atoms, {a: b.get(a, 0.0) for a in atoms}, {a: c.get(a, 0.0) for a in atoms}

    @property
    def atoms(self) -> list[StencilAtom]:
        return self._expanded[0]

    @property
    def b(self) -> dict[StencilAtom, float]:
        return self._expanded[1]

    @property
    def c(self) -> dict[StencilAtom, float]:
        return self._expanded[2]

    def document(self) -> dict:
        return {
            "order": self.order,
            "edge": self.edge.value,
            "coefficients": {k: self.params[k] for k in unknowns(self.order)},
            "atoms": [
                {
                    "class": a.sublattice.label,
                    "i": a.col_offset,
                    "row": a.row,
                    "b": self.b[a],
                    "c": self.c[a],
                }
                for a in self.atoms
            ],
            "matched_wavevectors": [[k.xi_p, k.xi_q] for k in self.matched_wavevectors],
            "max_equation_residual": self.max_residual,
        }


def _phase_sum(atoms_weights, p, q):
    tot = 0j
    for a, wt in atoms_weights:
        tot = tot + wt * np.exp(1j * (p * a.col_offset + SQRT3 * q * (a.row - 1)))
    return tot


def residual(stencil: MbcStencil, p, q, branch: int | None = None):
    """Matching residual Delta(p, q) of a bottom-oriented stencil.

    ``branch`` defaults to the extended-zone rule for scalar inputs.
    """
    if stencil.edge is not Edge.BOTTOM:
        raise DesignError("residual is defined for bottom-oriented stencils")
    if branch is None:
        branch = branch_for(float(p), float(q))
    w = omega(p, q, branch)
    A1, A2 = amplitudes(p, q, branch)
    vel = A1 * stencil.b[ANCHOR] + 0j
    disp = 0j
    for a in stencil.atoms:
        amp = A1 if a.sublattice is V else A2
        ph = np.exp(1j * (p * a.col_offset + SQRT3 * q * (a.row - 1)))
        if not a.is_anchor:
            vel = vel + stencil.b[a] * amp * ph
        disp = disp + stencil.c[a] * amp * ph
    return 1j * w * vel - disp


@dataclass(frozen=True)
class LinearForm:
    """``constant + sum coeffs[name] * x[name]``."""

    label: str
    constant: float
    coeffs: dict[str, float]

    def __call__(self, params: dict[str, float]) -> float:
        return self.constant + sum(v * params[k] for k, v in self.coeffs.items())

    def vector(self, names: list[str]) -> np.ndarray:
        return np.array([self.coeffs.get(k, 0.0) for k in names])


# Long-wave expansions at p = 0 on the acoustic branch.
OMEGA_SERIES = Series2(0j, 1 + 0j, 0j)  # omega = q + O(q^3)
A1_SERIES = Series2(3 + 0j, 2j * SQRT3, -3 + 0j)  # 1 + 2 exp(i sqrt3 q)
A2_SERIES = Series2(3 + 0j, 0j, -1 + 0j)  # 3 - omega^2

# Scalings that make D0..D2 real with the anchor constant positive.
_TAYLOR_SCALE = (-1.0 / 3.0, -1j, -1.0)


def taylor_conditions(order: int) -> list[LinearForm]:
    """D0, D1, D2 of Delta(0, q) as real linear forms in the unknowns."""
    bgroups, cgroups = shape(order)
    iw = 1j * OMEGA_SERIES

    def amp(g):
        return A1_SERIES if GROUPS[g].sublattice is V else A2_SERIES

    def phases(g):
        tot = Series2()
        for a, wt in GROUPS[g].atoms():
            tot = tot + wt * Series2.exp_i(SQRT3 * (a.row - 1))
        return tot

    const = iw * A1_SERIES
    cols = {f"b{g}": iw * amp(g) * phases(g) for g in bgroups}
    cols.update({f"c{g}": -(amp(g) * phases(g)) for g in cgroups})
    forms = []
    for k in range(3):
        s = _TAYLOR_SCALE[k]
        val = lambda ser: s * ser.coeffs[k]  # noqa: E731
        c0 = val(const)
        coeffs = {name: val(ser) for name, ser in cols.items()}
        assert abs(c0.imag) < 1e-12 and all(abs(v.imag) < 1e-12 for v in coeffs.values())
        forms.append(LinearForm(f"D{k}", c0.real, {n: v.real for n, v in coeffs.items()}))
    return forms


def matching_equations(order: int, k: WaveVector, branch: int | None = None) -> list[LinearForm]:
    """Re and Im of Delta(k) as linear forms (anchor term as the constant)."""
    p, q = k
    if branch is None:
        branch = branch_for(p, q)
    bgroups, cgroups = shape(order)
    w = float(omega(p, q, branch))
    A1, A2 = amplitudes(p, q, branch)
    A1, A2 = complex(A1), float(A2)

    def amp(g):
        return A1 if GROUPS[g].sublattice is V else A2

    const = 1j * w * A1
    cols = {f"b{g}": 1j * w * amp(g) * _phase_sum(GROUPS[g].atoms(), p, q) for g in bgroups}
    cols.update({f"c{g}": -amp(g) * _phase_sum(GROUPS[g].atoms(), p, q) for g in cgroups})
    return [
        LinearForm(f"Re Delta{k}", const.real, {n: complex(v).real for n, v in cols.items()}),
        LinearForm(f"Im Delta{k}", const.imag, {n: complex(v).imag for n, v in cols.items()}),
    ]


def assemble(spec: DesignSpec) -> list[LinearForm]:
    eqs = taylor_conditions(spec.order)
    for k in spec.matched_wavevectors:
        eqs.extend(matching_equations(spec.order, k))
    return eqs


def solve_mbc(spec: DesignSpec | int) -> MbcStencil:
    """Solve the square design system by dense LU with partial pivoting."""
    if isinstance(spec, int):
        spec = DesignSpec.default(spec)
    names = unknowns(spec.order)
    eqs = assemble(spec)
    A = np.array([e.vector(names) for e in eqs])
    rhs = -np.array([e.constant for e in eqs])
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        ks = ", ".join(str(k) for k in spec.matched_wavevectors) or "none"
        raise DesignError(
            f"MBC{spec.order} system is singular or ill-conditioned (cond={cond:.3g}) "
            f"for wavevectors [{ks}]"
        )
    x = np.linalg.solve(A, rhs)
    params = dict(zip(names, map(float, x)))
    res = max(abs(e(params)) for e in eqs)
    return MbcStencil(spec.order, params, Edge.BOTTOM, spec.matched_wavevectors, res)


# Reference coefficient tables, rounded to 4 decimals.
_TABLES = {
    1: dict(b11=0.5, c00=-3.4641, c11=1.7321),
    2: dict(b11=0.1671, b12=0.0139, c00=-2.6630, c11=1.4075, c12=-0.0760),
    3: dict(b11=0.8551, b12=0.8551, b23=0.2500, c00=-3.6755, c11=1.3285, c12=-1.3285, c23=0.9189),
    4: dict(
        b11=1.6261, b12=0.5183, b23=1.0146, b24=0.1034,
        c00=-4.3763, c11=0.7035, c12=0.2887, c23=0.0729, c24=0.5250,
    ),
    5: dict(
        b11=4.1088, b12=5.7272, b23=2.8636, b24=2.0544, b15=1.0611, b35=-0.5611,
        c00=-6.4564, c11=-3.2987, c12=3.2857, c23=-1.6428, c24=1.6493, c15=3.8084, c35=-0.5802,
    ),
}


def builtin_stencil(order: int) -> MbcStencil:
    """Rounded reference coefficients, matching the default design points."""
    if order not in _TABLES:
        raise DesignError(f"unknown MBC order {order!r}; expected one of {ORDERS}")
    st = MbcStencil(order, dict(_TABLES[order]), Edge.BOTTOM, DEFAULT_WAVEVECTORS[order])
    st.max_residual = max(abs(e(st.params)) for e in assemble(DesignSpec.default(order)))
    return st


def _rotate(x: float, y: float, degrees: float) -> tuple[float, float]:
    t = math.radians(degrees)
    c, s = math.cos(t), math.sin(t)
    return c * x - s * y, s * x + c * y


def edge_offsets(stencil: MbcStencil, edge: Edge, anchor: AtomId) -> list[tuple[AtomId, float, float]]:
    """Stencil atoms mapped onto ``edge`` around ``anchor`` (anchor first).

    No membership check; see :func:`edge_transform`.
    """
    want = EDGE_MISSING[edge][0]
    if anchor.sublattice is not want:
        raise DesignError(f"{edge.value} anchors are {want.label} atoms, got {anchor}")
    ax, ay = position(anchor)
    out = []
    for a in sorted(stencil.atoms, key=lambda s: (not s.is_anchor, s)):
        rx, ry = _rotate(*a.rel_position(), EDGE_ROTATION[edge])
        out.append((site_at(ax + rx, ay + ry), stencil.b[a], stencil.c[a]))
    return out


def edge_transform(
    stencil: MbcStencil, edge: Edge, anchor: AtomId, domain: Lattice
) -> list[tuple[AtomId, float, float]]:
    """Resolve a bottom stencil on any zigzag edge of ``domain``.

    Raises :class:`StencilOutsideDomain` if a stencil atom is not a member.
    """
    out = []
    for a, b, c in edge_offsets(stencil, edge, anchor):
        if a not in domain:
            raise StencilOutsideDomain(
                f"MBC{stencil.order} at {anchor} ({edge.value}) needs {a}, outside the domain"
            )
        out.append((domain.atoms[domain.idx(a)], b, c))
    return out
