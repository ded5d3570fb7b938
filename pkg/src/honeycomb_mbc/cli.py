"""Command-line front end.

Exit codes: 0 success, 2 config/usage error, 3 numerical failure, 4 I/O error.
Failures print one line ``error: <kind>: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

import numpy as np

from . import __version__
from .config import ConfigError, parse_config, parse_design_config, render_config
from .design import DesignError, DesignSpec, builtin_stencil, solve_mbc, unknowns
from .dispersion import DispersionError, WaveVector, dispersion_grid
from .io import OutputError, RunManifest, ensure_dir, fmt_real, read_csv, write_csv, write_json, write_text
from .lattice import DomainError, Field, build_domain, domain_rows
from .reflection import ReflectionError, sample_rows, scan_grid, scan_ray
from .simulator import SimulationError, deviation, reference_run, run, stencil_for

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

SNAPSHOT_COLUMNS = ["t", "class", "n", "m", "x", "y", "u", "udot"]

log = logging.getLogger("honeycomb_mbc")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text):
    try:
        a, b = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    return a, b


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise OutputError(f"cannot read {path}: {e.strerror or e}") from None


class _Outputs:
    def __init__(self, outdir):
        self.dir = ensure_dir(outdir)
        self.files: list[str] = []

    def path(self, name):
        self.files.append(name)
        return os.path.join(self.dir, name)

    def finish(self, command, config_echo, t0, residual=None):
        self.files.append("manifest.json")
        RunManifest(command, config_echo, self.files, time.perf_counter() - t0, residual).write(self.dir)


def _stencil(args):
    if getattr(args, "config", None):
        spec = parse_design_config(_read_text(args.config))
        return solve_mbc(spec)
    if args.coefficients == "table":
        return builtin_stencil(args.order)
    if args.wavevector:
        return solve_mbc(DesignSpec(args.order, tuple(WaveVector(*k) for k in args.wavevector)))
    return stencil_for(args.order)


def cmd_design(args, t0):
    st = _stencil(args)
    out = _Outputs(args.out)
    lines = [f"{k} = {fmt_real(st.params[k])}" for k in unknowns(st.order)]
    write_text(out.path("coefficients.txt"), "\n".join(lines) + "\n")
    write_json(out.path("coefficients.json"), st.document())
    print("\n".join(lines))
    echo = f"order={st.order} coefficients={args.coefficients} wavevectors=" + ";".join(
        f"{fmt_real(k.xi_p)},{fmt_real(k.xi_q)}" for k in st.matched_wavevectors
    )
    out.finish("design", echo, t0, st.max_residual)


def cmd_dispersion(args, t0):
    rows = dispersion_grid(args.p_range, args.q_range, args.steps[0], args.steps[1], args.velocity)
    out = _Outputs(args.out)
    cols = ["xi_p", "xi_q", "omega_acoustic", "omega_optical"]
    if args.velocity:
        cols += ["vg_p_acoustic", "vg_q_acoustic", "vg_p_optical", "vg_q_optical"]
    write_csv(out.path("dispersion.csv"), rows, cols)
    out.finish("dispersion", f"p_range={args.p_range} q_range={args.q_range} steps={args.steps}", t0)


def cmd_reflect(args, t0):
    st = _stencil(args)
    if args.grid:
        p0, p1, q0, q1 = args.grid
        samples = scan_grid(st, (p0, p1), args.steps[0], (q0, q1), args.steps[-1], args.threads)
        what = f"grid={args.grid} steps={args.steps}"
    else:
        samples = scan_ray(st, args.ray, args.q_range, args.steps[0], args.threads)
        what = f"ray={args.ray} q_range={args.q_range} steps={args.steps[0]}"
    out = _Outputs(args.out)
    write_csv(out.path("reflection.csv"), sample_rows(samples), ["xi_p", "xi_q", "branch", "abs_R"])
    out.finish("reflect", f"order={st.order} coefficients={args.coefficients} {what}", t0, st.max_residual)


def cmd_simulate(args, t0):
    cfg = parse_config(_read_text(args.config)) if args.config else parse_config("")
    if args.threads > 1:
        print("warning: simulate is single-threaded; --threads ignored", file=sys.stderr)
    res = reference_run(cfg) if args.reference else run(cfg)
    out = _Outputs(args.out)
    write_csv(out.path("energy.csv"), res.energy_rows(), ["t", "kinetic"])
    if cfg.outputs.snapshot_times:
        write_csv(out.path("snapshots.csv"), res.snapshot_rows(), SNAPSHOT_COLUMNS)
    if cfg.outputs.probes:
        rows = res.probe_rows()
        write_csv(out.path("probes.csv"), rows, list(rows[0]))
    text = render_config(cfg)
    write_text(out.path("config.ini"), text)
    out.finish("simulate --reference" if args.reference else "simulate", text, t0)


def _load_snapshots(path):
    by_t: dict[float, list] = {}
    for r in read_csv(path):
        by_t.setdefault(float(r["t"]), []).append(r)
    snaps, atoms = {}, None
    for t, rows in by_t.items():
        ids = [(r["class"], int(r["n"]), int(r["m"])) for r in rows]
        if atoms is None:
            atoms = ids
        elif ids != atoms:
            raise ValueError(f"{path}: atom order differs between snapshots")
        snaps[t] = Field(np.array([float(r["u"]) for r in rows]), np.array([float(r["udot"]) for r in rows]))
    return snaps, atoms or []


def cmd_compare(args, t0):
    run_snaps, run_atoms = _load_snapshots(args.run)
    ref_snaps, ref_atoms = _load_snapshots(args.ref)
    devs = deviation(run_snaps, ref_snaps, run_atoms, ref_atoms)
    out = _Outputs(args.out)
    rows = []
    for d in devs:
        for (c, n, m), du in zip(run_atoms, d.du):
            rows.append({"t": d.t, "class": c, "n": n, "m": m, "du": float(du)})
    write_csv(out.path("deviation.csv"), rows, ["t", "class", "n", "m", "du"])
    write_csv(
        out.path("norms.csv"), [{"t": d.t, "l2": d.l2, "max": d.max} for d in devs], ["t", "l2", "max"]
    )
    for d in devs:
        print(f"t={fmt_real(d.t)} l2={fmt_real(d.l2)} max={fmt_real(d.max)}")
    out.finish("compare", f"run={args.run} ref={args.ref}", t0)


def cmd_domain_dump(args, t0):
    dom = build_domain(args.N, args.M)
    out = _Outputs(args.out)
    write_csv(out.path("domain.csv"), domain_rows(dom), ["class", "n", "m", "x", "y", "boundary_class"])
    out.finish("domain-dump", f"N={args.N} M={args.M}", t0)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="honeycomb-mbc", description="Matching boundary conditions for honeycomb lattices.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--threads", type=int, default=1, help="worker threads for scans")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def stencil_opts(p):
        p.add_argument("--order", type=int, default=5, choices=range(1, 6))
        p.add_argument("--coefficients", choices=["solved", "table"], default="solved")
        p.add_argument("--wavevector", type=_pair, action="append", help="matched point 'p,q' (repeatable)")
        p.add_argument("--config", help="INI file with a [design] section")
        p.add_argument("--out", default=".")

    p = sub.add_parser("design", help="solve MBC coefficients")
    stencil_opts(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("dispersion", help="tabulate the dispersion relation")
    p.add_argument("--p-range", type=_pair, default=(-np.pi, np.pi))
    p.add_argument("--q-range", type=_pair, default=(-np.pi, np.pi))
    p.add_argument("--steps", type=int, nargs=2, default=(101, 101))
    p.add_argument("--velocity", action="store_true")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("reflect", help="reflection coefficient along a ray or on a grid")
    stencil_opts(p)
    p.add_argument("--ray", choices=["normal", "oblique30"], default="normal")
    p.add_argument("--q-range", type=_pair, default=(0.0, np.pi / np.sqrt(3.0)))
    p.add_argument("--grid", type=float, nargs=4, metavar=("P0", "P1", "Q0", "Q1"))
    p.add_argument("--steps", type=int, nargs="+", default=[201])
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("simulate", help="time-domain run from an INI config")
    p.add_argument("--config")
    p.add_argument("--reference", action="store_true", help="enlarged clamped domain instead of MBCs")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="deviation between two snapshot files")
    p.add_argument("--run", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("domain-dump", help="list domain atoms and their boundary class")
    p.add_argument("--N", type=int, default=99)
    p.add_argument("--M", type=int, default=51)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_domain_dump)
    return ap


def _fail(kind, msg, code):
    print(f"error: {kind}: {' '.join(str(msg).split())}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        return _fail("usage", e, EXIT_CONFIG)
    if args.command is None:
        ap.print_usage(sys.stderr)
        return _fail("usage", "a subcommand is required", EXIT_CONFIG)
    if args.threads < 1:
        return _fail("usage", "--threads must be >= 1", EXIT_CONFIG)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    t0 = time.perf_counter()
    try:
        args.func(args, t0)
    except ConfigError as e:
        return _fail("config", e, EXIT_CONFIG)
    except (SimulationError, ReflectionError, DispersionError, np.linalg.LinAlgError) as e:
        return _fail("numerical", e, EXIT_NUMERIC)
    except DesignError as e:
        kind, code = ("numerical", EXIT_NUMERIC) if "singular" in str(e) else ("config", EXIT_CONFIG)
        return _fail(kind, e, code)
    except (DomainError, ValueError) as e:
        return _fail("config", e, EXIT_CONFIG)
    except OSError as e:
        return _fail("io", e, EXIT_IO)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
