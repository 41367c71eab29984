"""JSON report envelope with a deterministic body.

Every CLI command emits {"meta": ..., "body": ...}.  The meta block
holds the timestamp, wall time and command line; everything seeded and
reproducible lives in the body.  Comparing two runs means comparing
body_bytes, which serialises the body alone with sorted keys, so
rerunning with the same seed must reproduce the bytes exactly.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .groups import GroupDescriptor


def jsonable(obj):
    """Recursive conversion to plain JSON types.

    Complex numbers become [re, im] pairs, numpy scalars and arrays
    become numbers and lists, descriptors become their text form, and
    dataclasses become dicts with an 'ok' entry when they expose one.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, GroupDescriptor):
        return obj.text
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: jsonable(getattr(obj, f.name))
               for f in dataclasses.fields(obj)}
        if hasattr(type(obj), "ok"):
            out["ok"] = bool(obj.ok)
        return out
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__} in a report")


def body_bytes(report: dict) -> bytes:
    """Canonical bytes of the body alone; the determinism comparator."""
    return json.dumps(report["body"], sort_keys=True,
                      separators=(",", ":")).encode("utf-8")


def make_report(command: str, body, wall_time_s: float,
                argv: list[str] | None = None) -> dict:
    body = jsonable(body)
    report = {"meta": {}, "body": body}
    report["meta"] = {
        "command": command,
        "argv": list(argv) if argv is not None else [],
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "wall_time_s": float(wall_time_s),
        "body_sha256": hashlib.sha256(body_bytes(report)).hexdigest(),
    }
    return report


def write_report(report: dict, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


def load_report(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
