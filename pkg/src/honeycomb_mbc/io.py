"""Deterministic CSV and manifest writers."""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

from . import __version__


class OutputError(OSError):
    pass


def fmt_real(x: float) -> str:
    """17 significant digits: round-trips every double."""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _cell(v) -> str:
    if isinstance(v, (float, int)):
        return fmt_real(v)
    return str(v)


def write_csv(path: str, records: list[dict], columns: list[str]) -> str:
    """Header row then one line per record, in the given order."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(columns)
            for rec in records:
                w.writerow([_cell(rec[c]) for c in columns])
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror or e}") from None
    except KeyError as e:
        raise ValueError(f"record is missing column {e.args[0]!r} for {path}") from None
    return path


def read_csv(path: str) -> list[dict]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return list(csv.DictReader(fh))
    except OSError as e:
        raise OutputError(f"cannot read {path}: {e.strerror or e}") from None


def write_text(path: str, text: str) -> str:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror or e}") from None
    return path


def write_json(path: str, doc) -> str:
    return write_text(path, json.dumps(doc, indent=2, sort_keys=False, allow_nan=True) + "\n")


def ensure_dir(path: str) -> str:
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create {path}: {e.strerror or e}") from None
    return path


@dataclass
class RunManifest:
    command: str
    config: str  # echo of the effective configuration
    files: list[str] = field(default_factory=list)
    wall_seconds: float = 0.0
    max_equation_residual: float | None = None
    version: str = __version__

    def document(self) -> dict:
        doc = {
            "tool": "honeycomb-mbc",
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "files": sorted(self.files),
            "wall_seconds": self.wall_seconds,
        }
        if self.max_equation_residual is not None:
            doc["max_equation_residual"] = self.max_equation_residual
        return doc

    def write(self, outdir: str) -> str:
        return write_json(os.path.join(outdir, "manifest.json"), self.document())
