"""Cached simulations shared by the simulator and acceptance tests."""

import os
from functools import lru_cache

from honeycomb_mbc.lattice import PotentialKind, PotentialSpec, atom
from honeycomb_mbc.simulator import BoundarySettings, OutputSettings, SimConfig, reference_run, run

# full length by default; set ACCEPTANCE_T_END=150 for a quicker pass
T_END = float(os.environ.get("ACCEPTANCE_T_END", "300"))
PROBES = (atom("w", 50, 3), atom("w", 28, 3))


def config(order, beta=None, t_end=T_END, dt=0.01, snapshot_times=(), stride=10, integrator="euler"):
    pot = PotentialSpec() if beta is None else PotentialSpec(PotentialKind.FPU_BETA, beta)
    return SimConfig(
        potential=pot,
        dt=dt,
        t_end=t_end,
        boundary=BoundarySettings(mbc_order=order, boundary_integrator=integrator),
        outputs=OutputSettings(snapshot_times=tuple(snapshot_times), energy_stride=stride, probes=PROBES),
    )


@lru_cache(maxsize=None)
def paper_run(order, beta=None, t_end=T_END, dt=0.01, snapshot_times=(), stride=10):
    return run(config(order, beta, t_end, dt, snapshot_times, stride))


@lru_cache(maxsize=None)
def reference(t_end, snapshot_times=(), beta=None):
    return reference_run(config(5, beta, t_end, snapshot_times=snapshot_times))
