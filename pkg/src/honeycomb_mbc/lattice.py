"""Honeycomb index space, hexagonal domain, forces and energies.

Atoms are labelled ``(sublattice, n, m)``. Both sublattices live on sites
with a fixed parity of ``n + m``. Positions use the embedding

    V(n, m) -> (n, sqrt(3) m)
    W(n, m) -> (n, sqrt(3) m - 2/sqrt(3))

so every nearest-neighbour bond has length ``2/sqrt(3)``. The coupling is

    V(n, m) <-> W(n-1, m+1), W(n+1, m+1), W(n, m)
    W(n, m) <-> V(n-1, m-1), V(n+1, m-1), V(n, m)

Per-atom quantities are stored as flat numpy arrays aligned with
``Lattice.atoms``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

SQRT3 = math.sqrt(3.0)
BOND_LENGTH = 2.0 / SQRT3
W_OFFSET = 2.0 / SQRT3


class SublatticeId(enum.IntEnum):
    V = 0
    W = 1

    @property
    def label(self) -> str:
        return self.name.lower()

    def other(self) -> "SublatticeId":
        return SublatticeId.W if self is SublatticeId.V else SublatticeId.V


class AtomId(NamedTuple):
    sublattice: SublatticeId
    n: int
    m: int

    def __str__(self) -> str:
        return f"{self.sublattice.label}[{self.n},{self.m}]"


def atom(label: str, n: int, m: int) -> AtomId:
    """Shorthand: ``atom("w", 50, 3)``."""
    return AtomId(SublatticeId[label.upper()], int(n), int(m))


def parse_atom(text: str) -> AtomId:
    """Parse ``"w:50:3"`` (also accepts commas) into an AtomId."""
    parts = text.replace(",", ":").split(":")
    if len(parts) != 3 or parts[0].strip().lower() not in ("v", "w"):
        raise ValueError(f"bad atom spec {text!r}, expected e.g. 'w:50:3'")
    return atom(parts[0].strip(), int(parts[1]), int(parts[2]))


# Neighbour offsets (dn, dm) in index space; the partner is always on the
# other sublattice.
NEIGHBOR_OFFSETS = {
    SublatticeId.V: ((-1, 1), (1, 1), (0, 0)),
    SublatticeId.W: ((-1, -1), (1, -1), (0, 0)),
}


def position(a: AtomId) -> tuple[float, float]:
    y = SQRT3 * a.m
    if a.sublattice is SublatticeId.W:
        y -= W_OFFSET
    return float(a.n), y


def site_at(x: float, y: float, tol: float = 1e-6) -> AtomId:
    """Inverse of :func:`position` for points on the honeycomb."""
    n = round(x)
    if abs(x - n) > tol:
        raise ValueError(f"({x}, {y}) is not a lattice site")
    mv = y / SQRT3
    if abs(mv - round(mv)) < tol:
        return AtomId(SublatticeId.V, n, round(mv))
    mw = (y + W_OFFSET) / SQRT3
    if abs(mw - round(mw)) < tol:
        return AtomId(SublatticeId.W, n, round(mw))
    raise ValueError(f"({x}, {y}) is not a lattice site")


class Edge(str, enum.Enum):
    BOTTOM = "bottom"
    TOP = "top"
    LOWER_LEFT = "lower_left"
    LOWER_RIGHT = "lower_right"
    UPPER_LEFT = "upper_left"
    UPPER_RIGHT = "upper_right"


# Rotation (degrees) taking the bottom edge's outward normal onto each edge's.
EDGE_ROTATION = {
    Edge.BOTTOM: 0.0,
    Edge.LOWER_RIGHT: 60.0,
    Edge.UPPER_RIGHT: 120.0,
    Edge.TOP: 180.0,
    Edge.UPPER_LEFT: -120.0,
    Edge.LOWER_LEFT: -60.0,
}

# Anchor sublattice and the neighbour offset that is missing on each edge.
EDGE_MISSING = {
    Edge.BOTTOM: (SublatticeId.V, (0, 0)),
    Edge.UPPER_LEFT: (SublatticeId.V, (-1, 1)),
    Edge.UPPER_RIGHT: (SublatticeId.V, (1, 1)),
    Edge.TOP: (SublatticeId.W, (0, 0)),
    Edge.LOWER_LEFT: (SublatticeId.W, (-1, -1)),
    Edge.LOWER_RIGHT: (SublatticeId.W, (1, -1)),
}


class BoundaryKind(str, enum.Enum):
    INTERIOR = "interior"
    EDGE = "edge"
    CORNER = "corner"


@dataclass(frozen=True)
class BoundaryClass:
    kind: BoundaryKind
    edge: Edge | None = None

    def __str__(self) -> str:
        if self.kind is BoundaryKind.EDGE:
            return f"edge:{self.edge.value}"
        return self.kind.value


INTERIOR = BoundaryClass(BoundaryKind.INTERIOR)
CORNER = BoundaryClass(BoundaryKind.CORNER)


class DomainError(ValueError):
    pass


class Lattice:
    """A finite set of honeycomb atoms with flat per-atom arrays.

    ``neighbors`` has shape (K, 3); a missing neighbour slot holds the
    atom's own index so that ``u[neighbors] - u[:, None]`` vanishes there.
    ``wrap`` (optional) is a horizontal period for strip geometries.
    """

    def __init__(self, atoms: Iterable[AtomId], wrap: int | None = None):
        self.atoms: list[AtomId] = list(atoms)
        self.wrap = wrap
        self.index: dict[AtomId, int] = {a: k for k, a in enumerate(self.atoms)}
        if len(self.index) != len(self.atoms):
            raise DomainError("duplicate atoms")
        K = len(self.atoms)
        self.sub = np.array([a.sublattice for a in self.atoms], dtype=np.int8)
        self.n = np.array([a.n for a in self.atoms], dtype=np.int64)
        self.m = np.array([a.m for a in self.atoms], dtype=np.int64)
        self.x = self.n.astype(float)
        self.y = SQRT3 * self.m - W_OFFSET * self.sub
        nb = np.repeat(np.arange(K)[:, None], 3, axis=1)
        for k, a in enumerate(self.atoms):
            for slot, (dn, dm) in enumerate(NEIGHBOR_OFFSETS[a.sublattice]):
                j = self.index.get(self._norm(AtomId(a.sublattice.other(), a.n + dn, a.m + dm)))
                if j is not None:
                    nb[k, slot] = j
        self.neighbors = nb
        self.neighbor_count = (nb != np.arange(K)[:, None]).sum(axis=1)
        # each bond once: V side owns it
        owner = self.sub == SublatticeId.V
        rows, slots = np.nonzero((nb != np.arange(K)[:, None]) & owner[:, None])
        self.bonds = np.stack([rows, nb[rows, slots]], axis=1)

    def _norm(self, a: AtomId) -> AtomId:
        if self.wrap is None:
            return a
        return AtomId(a.sublattice, a.n % self.wrap, a.m)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, a: AtomId) -> bool:
        return self._norm(a) in self.index

    def idx(self, a: AtomId) -> int:
        try:
            return self.index[self._norm(a)]
        except KeyError:
            raise KeyError(f"{a} is not a member") from None

    def neighbors_of(self, a: AtomId) -> list[AtomId]:
        k = self.idx(a)
        return [self.atoms[j] for j in self.neighbors[k] if j != k]

    def missing_offsets(self, a: AtomId) -> list[tuple[int, int]]:
        return [
            (dn, dm)
            for dn, dm in NEIGHBOR_OFFSETS[a.sublattice]
            if AtomId(a.sublattice.other(), a.n + dn, a.m + dm) not in self
        ]

    def center(self) -> tuple[float, float]:
        return (
            0.5 * (self.x.min() + self.x.max()),
            0.5 * (self.y.min() + self.y.max()),
        )

    def bond_vectors(self) -> np.ndarray:
        i, j = self.bonds[:, 0], self.bonds[:, 1]
        return np.stack([self.x[j] - self.x[i], self.y[j] - self.y[i]], axis=1)


class HexDomain(Lattice):
    """Hexagonal honeycomb patch bounded by six zigzag edges.

    Membership is the intersection of six half-planes in (n, m):

        V: 1 <= m <= M-1          W: 2 <= m <= M
        n + m >= (M+3)/2          m - n <= (M-1)/2
        n - m <= N - (M+1)/2      n + m <= N + (M+1)/2

    with ``n + m`` of parity ``(3M+1)/2``.
    """

    def __init__(self, N: int, M: int):
        self.N, self.M = N, M
        self.parity = ((3 * M + 1) // 2) % 2
        super().__init__(_hex_members(N, M, self.parity))
        self.edge_atoms: dict[Edge, list[AtomId]] = _edge_formulas(N, M)
        self.boundary_class: dict[AtomId, BoundaryClass] = {}
        on_edge = {}
        for e, members in self.edge_atoms.items():
            for a in members:
                if a not in self:
                    raise DomainError(f"edge formula atom {a} ({e.value}) is not a member")
                on_edge[a] = e
        self.corners: list[AtomId] = []
        for k, a in enumerate(self.atoms):
            if a in on_edge:
                self.boundary_class[a] = BoundaryClass(BoundaryKind.EDGE, on_edge[a])
            elif self.neighbor_count[k] < 3:
                self.boundary_class[a] = CORNER
                self.corners.append(a)
            else:
                self.boundary_class[a] = INTERIOR

    @property
    def boundary_atoms(self) -> list[AtomId]:
        return [a for a in self.atoms if self.boundary_class[a] is not INTERIOR]

    def orientation(self, a: AtomId) -> Edge:
        """Edge orientation of a boundary atom, read off its missing neighbour."""
        missing = self.missing_offsets(a)
        if len(missing) != 1:
            raise DomainError(f"{a} has {3 - len(missing)} neighbours; no unique orientation")
        for e, (s, off) in EDGE_MISSING.items():
            if s is a.sublattice and off == missing[0]:
                return e
        raise AssertionError("unreachable")

    def inradius(self) -> float:
        """Distance from the centre to the top/bottom atom rows."""
        return 0.5 * (self.y.max() - self.y.min())


def _check_dims(N: int, M: int) -> None:
    if M % 2 == 0 or N % 2 == 0:
        raise DomainError(f"N and M must both be odd (got N={N}, M={M})")
    if not N >= M >= 5:
        raise DomainError(f"need N >= M >= 5 (got N={N}, M={M})")
    if (M + 1) // 2 - 1 < 3:
        raise DomainError(f"M={M} too small: oblique edges are empty (need M >= 7)")


def _hex_members(N: int, M: int, parity: int) -> list[AtomId]:
    _check_dims(N, M)
    h = (M + 1) // 2
    out = []
    for m in range(1, M + 1):
        for s in (SublatticeId.V, SublatticeId.W):
            if s is SublatticeId.V and m > M - 1:
                continue
            if s is SublatticeId.W and m < 2:
                continue
            lo = max(h + 1 - m, m - (M - 1) // 2)
            hi = min(N - h + m, N + h - m)
            for n in range(lo, hi + 1):
                if (n + m) % 2 == parity:
                    out.append(AtomId(s, n, m))
    return out


def _edge_formulas(N: int, M: int) -> dict[Edge, list[AtomId]]:
    V, W = SublatticeId.V, SublatticeId.W
    h = (M + 1) // 2
    top_cols = range(h, N - (M - 1) // 2 + 1, 2)
    lower = range(3, h)
    upper = range(h + 1, M - 1)
    return {
        Edge.BOTTOM: [AtomId(V, n, 1) for n in top_cols],
        Edge.TOP: [AtomId(W, n, M) for n in top_cols],
        Edge.LOWER_LEFT: [AtomId(W, (M + 3) // 2 - m, m) for m in lower],
        Edge.LOWER_RIGHT: [AtomId(W, N - h + m, m) for m in lower],
        Edge.UPPER_LEFT: [AtomId(V, m - (M - 1) // 2, m) for m in upper],
        Edge.UPPER_RIGHT: [AtomId(V, h + N - m, m) for m in upper],
    }


def build_domain(N: int = 99, M: int = 51) -> HexDomain:
    """Hexagonal domain with N columns and M rows (both odd, N >= M)."""
    return HexDomain(int(N), int(M))


def build_strip(width: int, height: int) -> Lattice:
    """Horizontally periodic strip: V rows 1..height-1, W rows 2..height.

    ``width`` must be even so the parity set closes under the wrap.
    """
    if width % 2 or width < 8:
        raise DomainError("strip width must be even and >= 8")
    members = []
    for m in range(1, height + 1):
        for s in (SublatticeId.V, SublatticeId.W):
            if (s is SublatticeId.V and m == height) or (s is SublatticeId.W and m == 1):
                continue
            for n in range(width):
                if (n + m) % 2 == 1:
                    members.append(AtomId(s, n, m))
    return Lattice(members, wrap=width)


@dataclass
class Field:
    """Displacements ``u`` and velocities ``udot`` aligned with a lattice."""

    u: np.ndarray
    udot: np.ndarray

    @classmethod
    def zeros(cls, lattice: Lattice) -> "Field":
        K = len(lattice)
        return cls(np.zeros(K), np.zeros(K))

    def copy(self) -> "Field":
        return Field(self.u.copy(), self.udot.copy())


class PotentialKind(str, enum.Enum):
    HARMONIC = "harmonic"
    FPU_BETA = "fpu"


@dataclass(frozen=True)
class PotentialSpec:
    kind: PotentialKind = PotentialKind.HARMONIC
    beta: float = 0.0

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be >= 0")

    @property
    def cubic(self) -> float:
        """Coefficient of the cubic force term (0 for harmonic)."""
        return self.beta if self.kind is PotentialKind.FPU_BETA else 0.0


HARMONIC = PotentialSpec()


def accelerations(neighbors: np.ndarray, u: np.ndarray, cubic: float = 0.0) -> np.ndarray:
    d = u[neighbors] - u[:, None]
    if cubic:
        d = d + cubic * d * d * d
    # fixed column order keeps the reduction deterministic
    return d[:, 0] + d[:, 1] + d[:, 2]


def forces(lattice: Lattice, field: Field, pot: PotentialSpec = HARMONIC) -> np.ndarray:
    """Acceleration of every atom (unit mass); absent neighbours contribute 0."""
    return accelerations(lattice.neighbors, field.u, pot.cubic)


def potential_energy(lattice: Lattice, field: Field, pot: PotentialSpec = HARMONIC) -> float:
    d = field.u[lattice.bonds[:, 1]] - field.u[lattice.bonds[:, 0]]
    e = 0.5 * d * d
    if pot.cubic:
        e = e + 0.25 * pot.cubic * d**4
    return float(np.sum(e))


def kinetic_energy(lattice: Lattice, field: Field) -> float:
    return 0.5 * float(np.dot(field.udot, field.udot))


def hump_profile(r: np.ndarray, amplitude: float, xi: float, cutoff: float) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    u = amplitude * np.exp(-r * r / 50.0) * np.cos(r * xi) * np.cos(np.pi * r / 100.0)
    return np.where(r <= cutoff, u, 0.0)


def gaussian_hump(
    domain: Lattice,
    amplitude: float = 0.05,
    xi: float = 0.3,
    cutoff_radius: float = 20.0,
    center: tuple[float, float] | None = None,
) -> Field:
    """Radial Gaussian hump about the domain centre, zero velocities."""
    if center is None:
        center = domain.center()
    r = np.hypot(domain.x - center[0], domain.y - center[1])
    return Field(hump_profile(r, amplitude, xi, cutoff_radius), np.zeros(len(domain)))


def domain_rows(domain: HexDomain) -> list[dict]:
    """Rows for the diagnostic CSV dump."""
    return [
        {
            "class": a.sublattice.label,
            "n": a.n,
            "m": a.m,
            "x": float(domain.x[k]),
            "y": float(domain.y[k]),
            "boundary_class": str(domain.boundary_class[a]),
        }
        for k, a in enumerate(domain.atoms)
    ]
