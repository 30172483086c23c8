"""JSON documents for sets, reports, manifests and search history."""
from __future__ import annotations

import csv
import json
import math
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from ..errors import InvalidArgumentError, SetFormatError
from ..models import (
    Arc,
    Circle,
    DiscrepancyReport,
    HistoryEntry,
    Primitive,
    RectifiableSet,
    RunManifest,
    ScalingStudy,
    Segment,
    domain_from_dict,
)

PathLike = Union[str, Path]
MANIFEST_SUFFIX = ".manifest.json"


def artifact_version() -> str:
    try:
        return version("crofton")
    except PackageNotFoundError:
        return "0+unknown"


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ----------------------------- Sets -----------------------------

def primitive_to_dict(p: Primitive) -> Dict[str, Any]:
    if isinstance(p, Segment):
        return {"type": "segment", "p0": list(p.p0), "p1": list(p.p1)}
    if isinstance(p, Circle):
        return {"type": "circle", "center": list(p.center), "radius": p.radius}
    return {
        "type": "arc",
        "center": list(p.center),
        "radius": p.radius,
        "angle_start": p.angle_start,
        "angle_span": p.angle_span,
    }


def primitive_from_dict(data: Dict[str, Any]) -> Primitive:
    kind = data.get("type")
    try:
        if kind == "segment":
            return Segment(tuple(data["p0"]), tuple(data["p1"]))
        if kind == "circle":
            return Circle(tuple(data["center"]), data["radius"])
        if kind == "arc":
            return Arc(tuple(data["center"]), data["radius"], data["angle_start"], data["angle_span"])
    except (KeyError, TypeError, ValueError) as e:
        raise SetFormatError(f"Malformed {kind} primitive {data!r}: {e}") from e
    raise SetFormatError(f"Unknown primitive type: {kind!r}")


def set_to_dict(rset: RectifiableSet) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "primitives": [primitive_to_dict(p) for p in rset.primitives],
        "total_length": rset.total_length,
        "metadata": dict(rset.metadata),
    }
    if rset.domain is not None:
        doc["domain"] = rset.domain.to_dict()
    return doc


def set_from_dict(doc: Dict[str, Any]) -> RectifiableSet:
    if not isinstance(doc, dict) or not isinstance(doc.get("primitives"), list):
        raise SetFormatError("A set document needs a 'primitives' list")
    prims = tuple(primitive_from_dict(p) for p in doc["primitives"])
    domain = None
    if doc.get("domain") is not None:
        try:
            domain = domain_from_dict(doc["domain"])
        except (InvalidArgumentError, KeyError, TypeError) as e:
            raise SetFormatError(f"Malformed domain: {e}") from e
    try:
        rset = RectifiableSet(prims, dict(doc.get("metadata") or {}), domain)
    except InvalidArgumentError as e:
        raise SetFormatError(str(e)) from e
    stated = doc.get("total_length")
    if stated is not None and abs(float(stated) - rset.total_length) > 1e-9 * max(1.0, rset.total_length):
        raise SetFormatError(f"total_length {stated} disagrees with the primitives ({rset.total_length})")
    return rset


def _dump(doc: Any, path: PathLike) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2, allow_nan=False)
        f.write("\n")
    return out


def _load(path: PathLike) -> Any:
    try:
        with Path(path).open("r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SetFormatError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from e


def write_set(rset: RectifiableSet, path: PathLike) -> Path:
    return _dump(set_to_dict(rset), path)


def read_set(path: PathLike) -> RectifiableSet:
    return set_from_dict(_load(path))


# ----------------------------- Reports -----------------------------

def report_document(report: DiscrepancyReport, config: Optional[Dict[str, Any]] = None, **extra: Any) -> Dict[str, Any]:
    doc = report.to_dict()
    doc["upper_bound"] = None if math.isinf(report.certified_gap) else report.upper_bound
    doc["version"] = artifact_version()
    doc["config"] = dict(config or {})
    doc.update(extra)
    return doc


def write_report(report: DiscrepancyReport, path: PathLike, config: Optional[Dict[str, Any]] = None, **extra: Any) -> Path:
    return _dump(report_document(report, config, **extra), path)


def read_report(path: PathLike) -> DiscrepancyReport:
    try:
        return DiscrepancyReport.from_dict(_load(path))
    except (KeyError, TypeError, ValueError) as e:
        raise SetFormatError(f"{path}: not a discrepancy report ({e})") from e


def write_json(doc: Any, path: PathLike) -> Path:
    return _dump(doc, path)


# ----------------------------- Manifests -----------------------------

def manifest_path(output: PathLike) -> Path:
    out = Path(output)
    return out.with_name(out.name + MANIFEST_SUFFIX)


def write_manifest(manifest: RunManifest, path: PathLike) -> Path:
    return _dump(manifest.to_dict(), path)


def read_manifest(path: PathLike) -> RunManifest:
    try:
        return RunManifest.from_dict(_load(path))
    except (KeyError, TypeError, ValueError) as e:
        raise SetFormatError(f"{path}: not a run manifest ({e})") from e


# ----------------------------- History / tables -----------------------------

def write_history(history: Iterable[HistoryEntry], path: PathLike) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as f:
        for entry in history:
            f.write(json.dumps(entry.to_dict()) + "\n")
    return out


def read_history(path: PathLike) -> List[HistoryEntry]:
    entries = []
    with Path(path).open("r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                entries.append(HistoryEntry(**json.loads(line)))
    return entries


SCALING_COLUMNS = [
    "length",
    "n",
    "epsilon",
    "realized_length",
    "sup_value",
    "certified_gap",
    "primitive_count",
    "pencil_deviation",
]


def write_scaling_csv(study: ScalingStudy, path: PathLike) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(SCALING_COLUMNS + ["normalized"])
        for row in study.rows:
            writer.writerow([getattr(row, c) for c in SCALING_COLUMNS] + [row.normalized])
    return out


__all__ = [
    "MANIFEST_SUFFIX",
    "artifact_version",
    "utc_now",
    "primitive_to_dict",
    "primitive_from_dict",
    "set_to_dict",
    "set_from_dict",
    "write_set",
    "read_set",
    "report_document",
    "write_report",
    "read_report",
    "write_json",
    "manifest_path",
    "write_manifest",
    "read_manifest",
    "write_history",
    "read_history",
    "write_scaling_csv",
]
