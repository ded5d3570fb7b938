"""INI-style run configuration: parse, validate, render.

Sections: domain, potential, integrator, boundary, ic, outputs (simulation)
and design (coefficient solves). Every error message starts with the
offending key path, e.g. ``integrator.dt: must be > 0``.
"""

from __future__ import annotations

import configparser
from dataclasses import replace

from .design import DesignSpec
from .dispersion import WaveVector
from .lattice import AtomId, PotentialKind, PotentialSpec, parse_atom
from .simulator import BoundarySettings, InitialCondition, OutputSettings, SimConfig

DEFAULT_BETA = 1.0


class ConfigError(ValueError):
    """Invalid configuration; ``key`` holds the dotted key path."""

    def __init__(self, key: str, reason: str):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


def _real(key, text):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(key, f"expected a real number, got {text!r}") from None


def _int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(key, f"expected an integer, got {text!r}") from None


def _reals(key, text):
    return tuple(_real(key, t) for t in text.replace(",", " ").split())


def _atoms(key, text):
    out = []
    for tok in text.replace(",", " ").split():
        try:
            out.append(parse_atom(tok))
        except ValueError as e:
            raise ConfigError(key, str(e)) from None
    return tuple(out)


def _wavevectors(key, text):
    out = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        vals = _reals(key, chunk)
        if len(vals) != 2:
            raise ConfigError(key, f"expected 'xi_p, xi_q' pairs separated by ';', got {chunk.strip()!r}")
        out.append(WaveVector(*vals))
    return tuple(out)


# section -> key -> converter
_SIM_SCHEMA = {
    "domain": {"N": _int, "M": _int},
    "potential": {"kind": str, "beta": _real},
    "integrator": {"dt": _real, "t_end": _real},
    "boundary": {
        "mbc_order": _int,
        "corner_order": _int,
        "boundary_integrator": str,
        "coefficients": str,
    },
    "ic": {"amplitude": _real, "xi": _real, "cutoff": _real},
    "outputs": {"snapshot_times": _reals, "energy_stride": _int, "probes": _atoms},
}
_DESIGN_SCHEMA = {"design": {"order": _int, "wavevectors": _wavevectors}}


def _read(text: str, schema: dict) -> dict[str, dict]:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str  # keys are case-sensitive (N, M)
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ConfigError("<document>", " ".join(str(e).split())) from None
    out: dict[str, dict] = {}
    for sec in cp.sections():
        if sec not in schema:
            raise ConfigError(sec, f"unknown section (expected one of {', '.join(schema)})")
        out[sec] = {}
        for key, raw in cp.items(sec):
            path = f"{sec}.{key}"
            if key not in schema[sec]:
                raise ConfigError(path, "unknown key")
            out[sec][key] = schema[sec][key](path, raw.strip()) if schema[sec][key] is not str else raw.strip()
    return out


def parse_config(text: str) -> SimConfig:
    """Simulation config from INI text; missing keys take the defaults."""
    d = _read(text, {**_SIM_SCHEMA, **_DESIGN_SCHEMA})
    g = lambda sec, key, default: d.get(sec, {}).get(key, default)  # noqa: E731
    kind_text = g("potential", "kind", PotentialKind.HARMONIC.value)
    try:
        kind = PotentialKind(kind_text)
    except ValueError:
        raise ConfigError("potential.kind", f"must be 'harmonic' or 'fpu', got {kind_text!r}") from None
    beta = g("potential", "beta", DEFAULT_BETA)
    if beta < 0:
        raise ConfigError("potential.beta", "must be >= 0")
    cfg = SimConfig(
        N=g("domain", "N", 99),
        M=g("domain", "M", 51),
        potential=PotentialSpec(kind, beta),
        dt=g("integrator", "dt", 0.01),
        t_end=g("integrator", "t_end", 300.0),
        boundary=BoundarySettings(
            mbc_order=g("boundary", "mbc_order", 5),
            corner_order=g("boundary", "corner_order", 1),
            boundary_integrator=g("boundary", "boundary_integrator", "euler"),
            coefficients=g("boundary", "coefficients", "solved"),
        ),
        ic=InitialCondition(
            amplitude=g("ic", "amplitude", 0.05),
            xi=g("ic", "xi", 0.3),
            cutoff=g("ic", "cutoff", 20.0),
        ),
        outputs=OutputSettings(
            snapshot_times=g("outputs", "snapshot_times", ()),
            energy_stride=g("outputs", "energy_stride", 10),
            probes=g("outputs", "probes", ()),
        ),
    )
    validate(cfg)
    return cfg


def validate(cfg: SimConfig) -> None:
    from .lattice import DomainError, _check_dims

    try:
        _check_dims(cfg.N, cfg.M)
    except DomainError as e:
        raise ConfigError("domain", str(e)) from None
    try:
        cfg.validate()
    except ValueError as e:
        key, _, reason = str(e).partition(": ")
        raise ConfigError(key, reason) from None


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, AtomId):
        return f"{x.sublattice.label}:{x.n}:{x.m}"
    if isinstance(x, tuple):
        return ", ".join(_fmt(v) for v in x)
    return str(x)


def render_config(cfg: SimConfig) -> str:
    """INI text that parses back to an equal config."""
    sections = {
        "domain": {"N": cfg.N, "M": cfg.M},
        "potential": {"kind": cfg.potential.kind.value, "beta": float(cfg.potential.beta)},
        "integrator": {"dt": float(cfg.dt), "t_end": float(cfg.t_end)},
        "boundary": vars(cfg.boundary),
        "ic": {k: float(v) for k, v in vars(cfg.ic).items()},
        "outputs": {
            "snapshot_times": tuple(float(t) for t in cfg.outputs.snapshot_times),
            "energy_stride": cfg.outputs.energy_stride,
            "probes": tuple(cfg.outputs.probes),
        },
    }
    lines = []
    for sec, items in sections.items():
        lines.append(f"[{sec}]")
        lines += [f"{k} = {_fmt(v)}" for k, v in items.items()]
        lines.append("")
    return "\n".join(lines)


def parse_design_config(text: str) -> DesignSpec:
    d = _read(text, {**_SIM_SCHEMA, **_DESIGN_SCHEMA}).get("design", {})
    order = d.get("order")
    if order is None:
        raise ConfigError("design.order", "required")
    if "wavevectors" not in d:
        try:
            return DesignSpec.default(order)
        except ValueError as e:
            raise ConfigError("design.order", str(e)) from None
    try:
        return DesignSpec(order, d["wavevectors"])
    except ValueError as e:
        raise ConfigError("design.wavevectors", str(e)) from None


def with_overrides(cfg: SimConfig, **kw) -> SimConfig:
    out = replace(cfg, **kw)
    validate(out)
    return out
