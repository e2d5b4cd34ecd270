"""Reading configurations and grids, writing JSON reports and CSV summaries."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__


class InputError(ValueError):
    """Unreadable or malformed input file."""


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    seed: int | None = None
    precision: str = "double"
    budget: int | None = None
    long_running: bool = False
    out: str | None = None
    format: str = "json"
    options: dict = field(default_factory=dict)


def _clean(obj):
    """JSON-safe copy: numpy scalars to python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, complex):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    return obj


def make_report(run: RunConfig, body: dict, timestamp: bool = True) -> dict:
    header = {"tool": "atiyah-lab", "version": __version__, "run_config": asdict(run)}
    # the only field that differs between identical invocations
    header["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat() if timestamp else None
    return _clean({"header": header, "body": body})


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _cell(v):
    v = _clean(v)
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v


def csv_text(rows: list, columns: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k, "")) for k in columns})
    return buf.getvalue()


def write_outputs(out: str | None, fmt: str, report: dict, rows: list, columns: list) -> list:
    """JSON is always written; CSV goes to --out when requested, with the JSON beside it."""
    if out is None:
        return []
    path = Path(out)
    written = []
    if fmt == "csv":
        path.write_text(csv_text(rows, columns))
        written.append(path)
        path = path.with_suffix(".json")
    path.write_text(dumps(report))
    written.append(path)
    return written


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def read_points(path) -> np.ndarray:
    """Points from JSON ({"points": [...]} or a bare list) or CSV/whitespace text with 2 or 3 columns."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"{path}: no such file")
    if path.suffix.lower() == ".json":
        data = _load_json(path)
        if isinstance(data, dict):
            data = data.get("points")
        try:
            pts = np.array(data, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}: points must be numeric triples") from exc
    else:
        text = path.read_text().replace(",", " ")
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        try:
            pts = np.array([[float(v) for v in r] for r in rows])
        except ValueError as exc:
            raise InputError(f"{path}: non-numeric entry") from exc
    if pts.ndim != 2 or pts.shape[1] not in (2, 3):
        raise InputError(f"{path}: expected an n x 3 (or n x 2 planar) array of points")
    if pts.shape[1] == 2:
        pts = np.hstack([pts, np.zeros((len(pts), 1))])
    if not np.isfinite(pts).all():
        raise InputError(f"{path}: non-finite coordinate")
    return pts


def read_json(path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"{path}: no such file")
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data
