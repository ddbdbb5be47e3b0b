"""Run reports: canonical JSON, per-case CSV rows, labelled seed derivation."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .. import __version__
from ..ring import Polynomial

SCHEMA_VERSION = "1.0"
CSV_COLUMNS = ("case_id", "module_desc", "ideal_desc", "i", "n_max", "h_weak", "h_strong", "status")


def derive_seed(seed: int, label: str) -> int:
    """An independent 63-bit stream seed per label; new labels never shift old streams."""
    digest = hashlib.sha256(f"{seed}/{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def normalize(obj):
    """Plain JSON values: tuples to lists, exact numbers and polynomials to strings."""
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if obj.is_integer():
            return int(obj)
        return repr(obj)
    if isinstance(obj, (Fraction, Polynomial)):
        return str(obj)
    if hasattr(obj, "to_json"):
        return normalize(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj) -> str:
    return json.dumps(normalize(obj), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


@dataclass
class RunReport:
    config: dict
    task: str
    result: dict
    cases: list[dict] = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    wall_clock: float | None = None  # kept out of the JSON so reports stay byte-identical

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "config": self.config,
            "task": self.task,
            "result": self.result,
            "cases": self.cases,
            "certificates": self.certificates,
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    def csv_rows(self) -> list[list[str]]:
        rows = []
        for case in self.cases:
            rows.append(["" if case.get(c) is None else str(normalize(case.get(c))) for c in CSV_COLUMNS])
        return rows

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(self.csv_rows())
        return buf.getvalue()

    def timing_json(self) -> str:
        return json.dumps({"task": self.task, "wall_clock_seconds": round(self.wall_clock or 0.0, 6)},
                          sort_keys=True) + "\n"


def emit_report(report: RunReport, json_path=None, csv_path=None, timing_path=None) -> list[Path]:
    """Write the requested files; returns the paths written."""
    written = []
    for path, text in ((json_path, report.dumps()), (csv_path, report.csv_text()),
                       (timing_path, report.timing_json())):
        if path is None:
            continue
        p = Path(path)
        try:
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {p}: {exc.strerror}") from None
        written.append(p)
    return written
