"""Time-domain runs: velocity Verlet inside, MBC updates on the boundary.

Boundary ("anchor") atoms carry no Newtonian state. Their displacement is
advanced with the first-order law

    udot_anchor = sum c * u(stencil) - sum_{non-anchor} b * udot(stencil)

and their reported velocity is that right-hand side evaluated at the end of
each step. Anchors that appear in each other's stencils (near corners) make
this a small linear system, factored once per run.

Within a step: half-kick and drift of interior atoms with old forces, anchor
displacement update from start-of-step values, force recompute, then the
closing half-kick and the anchor velocity solve.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse

from .design import (
    DesignSpec,
    MbcStencil,
    StencilOutsideDomain,
    builtin_stencil,
    edge_offsets,
    edge_transform,
    solve_mbc,
)
from .dispersion import Branch, WaveVector, amplitudes, branch_for, group_velocity, max_group_speed, omega
from .lattice import (
    SQRT3,
    AtomId,
    BoundaryKind,
    Edge,
    Field,
    HexDomain,
    Lattice,
    PotentialSpec,
    accelerations,
    build_domain,
    build_strip,
    gaussian_hump,
    kinetic_energy,
    potential_energy,
)

log = logging.getLogger(__name__)

MAX_STABLE_DT_OMEGA = 0.2
OMEGA_MAX = math.sqrt(6.0)
CLAMPED = 0


class SimulationError(ArithmeticError):
    """Blow-up or an infeasible setup."""


@dataclass
class BoundarySettings:
    mbc_order: int = 5  # 0 clamps every boundary atom at zero
    corner_order: int = 1
    boundary_integrator: str = "euler"
    coefficients: str = "solved"  # or "table" for the rounded reference values


@dataclass
class InitialCondition:
    amplitude: float = 0.05
    xi: float = 0.3
    cutoff: float = 20.0


@dataclass
class OutputSettings:
    snapshot_times: tuple[float, ...] = ()
    energy_stride: int = 10
    probes: tuple[AtomId, ...] = ()


@dataclass
class SimConfig:
    N: int = 99
    M: int = 51
    potential: PotentialSpec = field(default_factory=PotentialSpec)
    dt: float = 0.01
    t_end: float = 300.0
    boundary: BoundarySettings = field(default_factory=BoundarySettings)
    ic: InitialCondition = field(default_factory=InitialCondition)
    outputs: OutputSettings = field(default_factory=OutputSettings)

    def validate(self) -> None:
        """Raise ValueError("<key path>: <reason>") on the first violation."""
        checks = [
            ("integrator.dt", self.dt > 0, "must be > 0"),
            (
                "integrator.dt",
                self.dt * OMEGA_MAX < MAX_STABLE_DT_OMEGA,
                f"dt*sqrt(6) must be < {MAX_STABLE_DT_OMEGA}",
            ),
            ("integrator.t_end", self.t_end >= 0, "must be >= 0"),
            ("boundary.mbc_order", self.boundary.mbc_order in range(0, 6), "must be 0..5"),
            ("boundary.corner_order", self.boundary.corner_order in range(1, 6), "must be 1..5"),
            (
                "boundary.boundary_integrator",
                self.boundary.boundary_integrator in ("euler", "heun"),
                "must be 'euler' or 'heun'",
            ),
            (
                "boundary.coefficients",
                self.boundary.coefficients in ("solved", "table"),
                "must be 'solved' or 'table'",
            ),
            ("outputs.energy_stride", self.outputs.energy_stride >= 1, "must be >= 1"),
            (
                "outputs.snapshot_times",
                all(0 <= t <= self.t_end for t in self.outputs.snapshot_times),
                "must lie in [0, t_end]",
            ),
            ("ic.cutoff", self.ic.cutoff >= 0, "must be >= 0"),
            ("potential.beta", self.potential.beta >= 0, "must be >= 0"),
        ]
        for key, ok, reason in checks:
            if not ok:
                raise ValueError(f"{key}: {reason}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


# ---------------------------------------------------------------- boundary plan


@dataclass
class BoundaryEntry:
    anchor: AtomId
    edge: Edge
    order: int
    terms: list[tuple[AtomId, float, float]]  # anchor first


@dataclass
class BoundaryPlan:
    entries: list[BoundaryEntry]

    @property
    def anchors(self) -> list[AtomId]:
        return [e.anchor for e in self.entries]

    def orders(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for e in self.entries:
            out[e.order] = out.get(e.order, 0) + 1
        return out


def stencil_for(order: int, coefficients: str = "solved") -> MbcStencil:
    if coefficients == "table":
        return builtin_stencil(order)
    return solve_mbc(DesignSpec.default(order))


def build_plan(
    domain: HexDomain,
    order: int,
    corner_order: int = 1,
    coefficients: str = "solved",
    stencils: dict[int, MbcStencil] | None = None,
) -> BoundaryPlan:
    """One MBC instance per boundary atom.

    Corner atoms use ``corner_order``. Edge atoms use ``order``, falling
    back to the highest lower order whose stencil stays inside the domain
    and does not reach a corner atom; MBC1 is the last resort. A corner
    inside a high-order stencil couples the two anchors through their b
    terms, which gives an exponentially growing mode.
    """
    stencils = dict(stencils or {})

    def get(r):
        if r not in stencils:
            stencils[r] = stencil_for(r, coefficients)
        return stencils[r]

    entries = []
    for a in domain.atoms:
        cls = domain.boundary_class[a]
        if cls.kind is BoundaryKind.INTERIOR:
            continue
        edge = domain.orientation(a)
        ladder = [corner_order] if cls.kind is BoundaryKind.CORNER else list(range(order, 0, -1))
        for r in ladder:
            try:
                terms = edge_transform(get(r), edge, a, domain)
            except StencilOutsideDomain:
                continue
            if cls.kind is BoundaryKind.EDGE and r > 1 and _reaches_corner(domain, terms):
                continue
            entries.append(BoundaryEntry(a, edge, r, terms))
            break
        else:
            raise SimulationError(f"no MBC order fits at boundary atom {a}")
    return BoundaryPlan(entries)


def _reaches_corner(domain: HexDomain, terms) -> bool:
    return any(domain.boundary_class[t].kind is BoundaryKind.CORNER for t, _, _ in terms[1:])


class _AnchorSystem:
    """Compiled linear MBC law for a set of anchors."""

    def __init__(self, lattice: Lattice, entries: list[BoundaryEntry]):
        K = len(lattice)
        self.idx = np.array([lattice.idx(e.anchor) for e in entries], dtype=np.int64)
        pos = {int(k): r for r, k in enumerate(self.idx)}
        crow, ccol, cval = [], [], []
        brow, bcol, bval = [], [], []
        BAA = np.eye(len(entries))
        for r, e in enumerate(entries):
            for j, (a, b, c) in enumerate(e.terms):
                k = lattice.idx(a)
                if c:
                    crow.append(r), ccol.append(k), cval.append(c)
                if j == 0 or not b:
                    continue
                if k in pos:
                    BAA[r, pos[k]] += b
                else:
                    brow.append(r), bcol.append(k), bval.append(b)
        n = len(entries)
        self.C = scipy.sparse.csr_matrix((cval, (crow, ccol)), shape=(n, K))
        self.B = scipy.sparse.csr_matrix((bval, (brow, bcol)), shape=(n, K))
        self.coupled = bool(np.any(BAA != np.eye(n)))
        self.lu = scipy.linalg.lu_factor(BAA) if self.coupled else None

    def velocity(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        rhs = self.C @ u - self.B @ v
        if self.coupled:
            return scipy.linalg.lu_solve(self.lu, rhs)
        return rhs


class Integrator:
    """Velocity Verlet with MBC anchors and optionally clamped atoms."""

    def __init__(
        self,
        lattice: Lattice,
        potential: PotentialSpec,
        dt: float,
        entries: list[BoundaryEntry] = (),
        clamped: list[AtomId] | np.ndarray = (),
        scheme: str = "euler",
    ):
        if scheme not in ("euler", "heun"):
            raise ValueError(f"unknown boundary integrator {scheme!r}")
        self.lattice = lattice
        self.cubic = potential.cubic
        self.dt = dt
        self.scheme = scheme
        K = len(lattice)
        clamped_idx = np.array(
            [c if isinstance(c, (int, np.integer)) else lattice.idx(c) for c in clamped], dtype=np.int64
        )
        self.anchors = _AnchorSystem(lattice, list(entries)) if len(entries) else None
        self.free = np.ones(K)
        self.free[clamped_idx] = 0.0
        if self.anchors is not None:
            self.free[self.anchors.idx] = 0.0
        self.clamped = clamped_idx
        self.u = np.zeros(K)
        self.v = np.zeros(K)
        self.a = np.zeros(K)
        self.step_count = 0

    @property
    def t(self) -> float:
        return self.step_count * self.dt

    def _acc(self, u):
        return accelerations(self.lattice.neighbors, u, self.cubic)

    def set_field(self, f: Field) -> None:
        self.u = f.u.astype(float).copy()
        self.v = f.udot.astype(float).copy()
        self.u[self.clamped] = 0.0
        self.v[self.clamped] = 0.0
        if self.anchors is not None:
            self.v[self.anchors.idx] = self.anchors.velocity(self.u, self.v)
        self.a = self._acc(self.u)
        self.step_count = 0

    @property
    def field(self) -> Field:
        return Field(self.u.copy(), self.v.copy())

    def step(self) -> None:
        dt, h = self.dt, 0.5 * self.dt
        u, v, free = self.u, self.v, self.free
        v += h * self.a * free
        if self.scheme == "euler" or self.anchors is None:
            # interior drift with half-step velocity; anchors: explicit Euler
            # with their start-of-step MBC velocity (clamped atoms have v = 0)
            u += dt * v
        else:
            A = self.anchors.idx
            f0 = v[A].copy()
            uA0 = u[A].copy()
            u += dt * v
            a_pred = self._acc(u)
            v_pred = v + h * a_pred * free
            f1 = self.anchors.velocity(u, v_pred)
            u[A] = uA0 + h * (f0 + f1)
        self.a = self._acc(u)
        v += h * self.a * free
        if self.anchors is not None:
            v[self.anchors.idx] = self.anchors.velocity(u, v)
        self.step_count += 1
        if not math.isfinite(float(np.dot(u, u)) + float(np.dot(v, v))):
            raise SimulationError(f"non-finite state at step {self.step_count} (t={self.t:g})")

    def kinetic(self, subset: np.ndarray | None = None) -> float:
        v = self.v if subset is None else self.v[subset]
        return 0.5 * float(np.dot(v, v))


# ---------------------------------------------------------------- runs


@dataclass
class RunResult:
    domain: HexDomain
    config: SimConfig
    times: np.ndarray  # energy/probe sample times
    kinetic: np.ndarray
    snapshots: dict[float, Field]
    probes: dict[AtomId, np.ndarray]
    plan: BoundaryPlan | None = None
    wall_seconds: float = 0.0
    enlarged: "EnlargedDomain | None" = None

    def energy_rows(self) -> list[dict]:
        return [{"t": float(t), "kinetic": float(w)} for t, w in zip(self.times, self.kinetic)]

    def probe_rows(self) -> list[dict]:
        rows = []
        for i, t in enumerate(self.times):
            rec = {"t": float(t)}
            for a, series in self.probes.items():
                rec[f"{a.sublattice.label}_{a.n}_{a.m}"] = float(series[i])
            rows.append(rec)
        return rows

    def snapshot_rows(self) -> list[dict]:
        return snapshot_rows(self.domain, self.snapshots)


def snapshot_rows(domain: Lattice, snapshots: dict[float, Field]) -> list[dict]:
    rows = []
    for t in sorted(snapshots):
        f = snapshots[t]
        for k, a in enumerate(domain.atoms):
            rows.append(
                {
                    "t": float(t),
                    "class": a.sublattice.label,
                    "n": a.n,
                    "m": a.m,
                    "x": float(domain.x[k]),
                    "y": float(domain.y[k]),
                    "u": float(f.u[k]),
                    "udot": float(f.udot[k]),
                }
            )
    return rows


def _snapshot_steps(times, dt) -> dict[int, float]:
    out = {}
    for t in times:
        s = int(round(t / dt))
        if abs(s * dt - t) > 1e-9 * max(1.0, abs(t)):
            raise ValueError(f"snapshot time {t} is not a multiple of dt={dt}")
        out[s] = float(t)
    return out


def _drive(
    integ: Integrator,
    n_steps: int,
    stride: int,
    snap_steps: dict[int, float],
    probe_idx: np.ndarray,
    energy_subset: np.ndarray | None,
    field_subset: np.ndarray | None = None,
):
    times, kin, probe = [], [], []
    snaps: dict[float, Field] = {}

    def record():
        times.append(integ.t)
        kin.append(integ.kinetic(energy_subset))
        probe.append(integ.u[probe_idx].copy())

    def snap():
        if integ.step_count in snap_steps:
            sel = slice(None) if field_subset is None else field_subset
            snaps[snap_steps[integ.step_count]] = Field(integ.u[sel].copy(), integ.v[sel].copy())

    record()
    snap()
    for s in range(1, n_steps + 1):
        integ.step()
        if s % stride == 0:
            record()
        snap()
    probe = np.array(probe).reshape(len(times), len(probe_idx))
    return np.array(times), np.array(kin), snaps, probe


def run(config: SimConfig, domain: HexDomain | None = None) -> RunResult:
    """Gaussian hump on the hexagon with MBC (or clamped) boundaries."""
    config.validate()
    t0 = time.perf_counter()
    domain = domain or build_domain(config.N, config.M)
    b = config.boundary
    if b.mbc_order == CLAMPED:
        plan = None
        integ = Integrator(domain, config.potential, config.dt, clamped=domain.boundary_atoms)
    else:
        plan = build_plan(domain, b.mbc_order, b.corner_order, b.coefficients)
        integ = Integrator(domain, config.potential, config.dt, plan.entries, scheme=b.boundary_integrator)
    ic = config.ic
    integ.set_field(gaussian_hump(domain, ic.amplitude, ic.xi, ic.cutoff))
    probe_idx = np.array([domain.idx(a) for a in config.outputs.probes], dtype=np.int64)
    times, kin, snaps, probe = _drive(
        integ,
        config.n_steps,
        config.outputs.energy_stride,
        _snapshot_steps(config.outputs.snapshot_times, config.dt),
        probe_idx,
        None,
    )
    return RunResult(
        domain,
        config,
        times,
        kin,
        snaps,
        {a: probe[:, i] for i, a in enumerate(config.outputs.probes)},
        plan,
        time.perf_counter() - t0,
    )


def total_energy(integ: Integrator, potential: PotentialSpec) -> float:
    f = Field(integ.u, integ.v)
    return kinetic_energy(integ.lattice, f) + potential_energy(integ.lattice, f, potential)


def modified_energy(integ: Integrator) -> float:
    """Quantity conserved exactly by velocity Verlet on a harmonic lattice.

    H - dt^2/8 |a|^2 over the free atoms; the plain total energy only
    oscillates around it with an O(dt^2) amplitude.
    """
    if integ.cubic:
        raise ValueError("modified energy is defined for the harmonic potential only")
    a = integ.a * integ.free
    return total_energy(integ, PotentialSpec()) - integ.dt**2 / 8.0 * float(np.dot(a, a))


# ---------------------------------------------------------------- reference


@dataclass
class EnlargedDomain:
    big: HexDomain
    sub: HexDomain
    shift: tuple[int, int]  # (dn, dm): sub (n, m) -> big (n + dn, m + dm)
    sub_index: np.ndarray  # big indices of the sub atoms, in sub order
    clearance: float


def required_clearance(cutoff: float, t_end: float, margin: float = 10.0, c_max: float | None = None) -> float:
    if c_max is None:
        c_max = max_group_speed()
    return cutoff + c_max * t_end + margin


def enlarged_domain(sub: HexDomain, center: tuple[float, float], clearance: float, max_atoms: int = 5_000_000) -> EnlargedDomain:
    """Smallest concentric hexagon whose boundary stays ``clearance`` away from ``center``.

    The sub hexagon's rows shift by k and columns by dn; dn must be even to
    keep the site parity, which forces N' - N to be a multiple of 4.
    """
    def distance_to_boundary(big, dn, dm):
        cx, cy = center[0] + dn, center[1] + SQRT3 * dm
        bidx = np.array([big.idx(a) for a in big.boundary_atoms])
        return float(np.min(np.hypot(big.x[bidx] - cx, big.y[bidx] - cy)))

    k = 0
    while True:
        M2 = sub.M + 2 * k
        # regular hexagons have N = 2M - 3; never shrink below the sub's width
        N2 = max(sub.N + 2 * k, 2 * M2 - 3)
        N2 += (-(N2 - sub.N)) % 4
        dn = (N2 - sub.N) // 2
        est = 2 * (N2 * M2)  # generous upper bound on the member count
        if est > 4 * max_atoms:
            raise SimulationError(
                f"reference domain infeasible: would need more than N={N2}, M={M2} for clearance {clearance:g}"
            )
        # cheap bound first: vertical clearance
        if sub.inradius() + SQRT3 * k > clearance:
            big = build_domain(N2, M2)
            d = distance_to_boundary(big, dn, k)
            if d > clearance:
                break
        k += 1
    if len(big) > max_atoms:
        raise SimulationError(f"reference domain N={N2}, M={M2} has {len(big)} atoms > {max_atoms}")
    sub_index = np.empty(len(sub), dtype=np.int64)
    for i, a in enumerate(sub.atoms):
        b = AtomId(a.sublattice, a.n + dn, a.m + k)
        if b not in big:
            raise SimulationError(f"sub atom {a} maps outside the enlarged domain")
        sub_index[i] = big.idx(b)
    return EnlargedDomain(big, sub, (dn, k), sub_index, d)


def reference_run(config: SimConfig, c_max: float | None = None, max_atoms: int = 5_000_000) -> RunResult:
    """Same hump on an enlarged, clamped domain; outputs restricted to the sub hexagon.

    The returned RunResult is index-aligned with ``build_domain(N, M)``; its
    kinetic energy is summed over the sub hexagon only.
    """
    config.validate()
    t0 = time.perf_counter()
    sub = build_domain(config.N, config.M)
    clearance = required_clearance(config.ic.cutoff, config.t_end, c_max=c_max)
    enl = enlarged_domain(sub, sub.center(), clearance, max_atoms)
    big = enl.big
    log.info("reference domain N=%d M=%d atoms=%d", big.N, big.M, len(big))
    dn, dm = enl.shift
    cx, cy = sub.center()
    integ = Integrator(big, config.potential, config.dt, clamped=big.boundary_atoms)
    ic = config.ic
    integ.set_field(gaussian_hump(big, ic.amplitude, ic.xi, ic.cutoff, center=(cx + dn, cy + SQRT3 * dm)))
    probe_idx = np.array(
        [enl.sub_index[sub.idx(a)] for a in config.outputs.probes], dtype=np.int64
    )
    times, kin, snaps, probe = _drive(
        integ,
        config.n_steps,
        config.outputs.energy_stride,
        _snapshot_steps(config.outputs.snapshot_times, config.dt),
        probe_idx,
        enl.sub_index,
        enl.sub_index,
    )
    return RunResult(
        sub,
        config,
        times,
        kin,
        snaps,
        {a: probe[:, i] for i, a in enumerate(config.outputs.probes)},
        None,
        time.perf_counter() - t0,
        enl,
    )


# ---------------------------------------------------------------- deviation


@dataclass
class Deviation:
    t: float
    du: np.ndarray
    l2: float
    max: float


def deviation(
    run_snapshots: dict[float, Field],
    ref_snapshots: dict[float, Field],
    run_atoms: list[AtomId] | None = None,
    ref_atoms: list[AtomId] | None = None,
) -> list[Deviation]:
    """Per-atom displacement difference and its norms at every shared time."""
    if run_atoms is not None and ref_atoms is not None and list(run_atoms) != list(ref_atoms):
        raise ValueError("snapshots are not index-aligned: atom lists differ")
    out = []
    for t in sorted(run_snapshots):
        if t not in ref_snapshots:
            raise ValueError(f"reference has no snapshot at t={t}")
        a, b = run_snapshots[t].u, ref_snapshots[t].u
        if a.shape != b.shape:
            raise ValueError(f"snapshot sizes differ at t={t}: {a.shape} vs {b.shape}")
        du = a - b
        out.append(Deviation(t, du, float(np.linalg.norm(du)), float(np.max(np.abs(du))) if du.size else 0.0))
    return out


def wavefront_radius(domain: Lattice, f: Field, center: tuple[float, float], threshold: float = 1e-4) -> float:
    r = np.hypot(domain.x - center[0], domain.y - center[1])
    hit = np.abs(f.u) > threshold
    return float(r[hit].max()) if hit.any() else 0.0


# ---------------------------------------------------------------- packet probe


@dataclass
class ProbeResult:
    k0: WaveVector
    measured_ratio: float
    predicted_ratio: float | None
    group_velocity: float
    t_measure: float


def _downward_packet(strip: Lattice, q0: float, y0: float, sigma: float, n_modes: int = 801):
    """Gaussian packet assembled from exact acoustic eigenmodes with p = 0.

    Summing eigenmodes (rather than modulating the k0 mode by an envelope)
    keeps the packet free of upward-moving and optical components.
    """
    half = 8.0 / sigma
    qs = np.linspace(q0 - half, q0 + half, n_modes)
    qs = qs[qs > 0]
    weight = np.exp(-0.5 * (sigma * (qs - q0)) ** 2) * np.exp(-1j * qs * y0)
    A1, A2 = amplitudes(0.0, qs, Branch.ACOUSTIC)
    w = omega(0.0, qs, Branch.ACOUSTIC)
    amp = np.where(strip.sub[:, None] == 0, A1[None, :], A2[None, :])
    z = amp * weight[None, :] * np.exp(1j * SQRT3 * np.outer(strip.m, qs))
    return z.sum(axis=1).real, (1j * z * w[None, :]).sum(axis=1).real


def wavepacket_reflection_probe(
    stencil: MbcStencil | int | None,
    k0: WaveVector | tuple[float, float],
    envelope_width: float = 40.0,
    dt: float = 0.01,
    width: int = 8,
) -> ProbeResult:
    """Energy reflected by the bottom boundary of a periodic strip.

    A downward Gaussian packet of the acoustic (A1, A2) mode at normal
    incidence starts ``6 * envelope_width`` above the bottom row and is
    measured once the reflected packet is back at the start height.
    ``stencil=None`` clamps the bottom row instead (total reflection).
    """
    from .reflection import reflection_coefficient

    k0 = WaveVector(*k0)
    p0, q0 = k0
    if p0 != 0.0 or q0 <= 0:
        raise ValueError("probe wavevector must be on the normal ray with xi_q > 0")
    if branch_for(p0, q0) is not Branch.ACOUSTIC:
        raise ValueError("probe wavevector must be on the acoustic branch")
    if isinstance(stencil, int):
        stencil = stencil_for(stencil)
    vg = float(group_velocity(p0, q0, Branch.ACOUSTIC)[1])
    sigma = float(envelope_width)
    y0 = 6.0 * sigma + 10.0
    y_top = y0 + 7.0 * sigma
    rows = int(math.ceil(y_top / SQRT3)) + 2
    strip = build_strip(width, rows)
    anchors = [a for a in strip.atoms if a.m == 1]
    top = [a for a in strip.atoms if a.sublattice.name == "W" and a.m == rows]
    if stencil is None:
        integ = Integrator(strip, PotentialSpec(), dt, clamped=anchors + top)
    else:
        entries = [
            BoundaryEntry(a, Edge.BOTTOM, stencil.order, [(strip.atoms[strip.idx(b)], bb, cc) for b, bb, cc in edge_offsets(stencil, Edge.BOTTOM, a)])
            for a in anchors
        ]
        integ = Integrator(strip, PotentialSpec(), dt, entries, clamped=top)
    u0, v0 = _downward_packet(strip, q0, y0, sigma)
    integ.set_field(Field(u0, v0))
    e0 = integ.kinetic()
    t_measure = 2.0 * y0 / vg
    for _ in range(int(round(t_measure / dt))):
        integ.step()
    ycell = SQRT3 * strip.m
    near_top = ycell > y_top - 2.0 * sigma
    if 0.5 * float(np.dot(integ.v[near_top], integ.v[near_top])) > 1e-6 * e0:
        raise SimulationError("packet reached the clamped far end before measurement")
    measured = integ.kinetic() / e0
    predicted = None
    if stencil is not None:
        predicted = abs(reflection_coefficient(stencil, p0, q0)) ** 2
    return ProbeResult(k0, measured, predicted, vg, t_measure)
