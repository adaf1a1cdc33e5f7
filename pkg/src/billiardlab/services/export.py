# src/billiardlab/services/export.py
from __future__ import annotations
import json
import logging
import math
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from billiardlab.models import (
    BilliardState, ConfocalCaustic, ConicClass, Ellipse, GammaL, InvariantCheck, LocusSample,
    Orbit, Point2,
)
from billiardlab.utils.svg import render_payload, svgwrite, to_svg_text

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["center", "k", "t0", "x", "y"]
FLOAT_FORMAT = "%.17g"


def json_text(obj: Any, level: int = 0) -> str:
    """
    The json.dumps(indent=2) layout, except that every finite float is written with
    FLOAT_FORMAT. Non-finite floats and all other scalars go through json.dumps.
    """
    pad, end = "  " * (level + 1), "  " * level
    if isinstance(obj, float) and math.isfinite(obj):
        return FLOAT_FORMAT % obj
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {json_text(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + json_text(v, level + 1) for v in obj) + "\n" + end + "]"
    return json.dumps(obj)


def _xy(points: Iterable[Point2]) -> List[List[float]]:
    return [[p.x, p.y] for p in points]


def build_payload(
    config: Dict[str, Any],
    ellipse: Ellipse,
    caustic: Optional[ConfocalCaustic] = None,
    gamma_l: Optional[GammaL] = None,
    orbits: Sequence[Orbit] = (),
    loci: Sequence[LocusSample] = (),
    classes: Optional[Dict[str, ConicClass]] = None,
    checks: Sequence[InvariantCheck] = (),
) -> Dict[str, Any]:
    """The one export document every format is written from."""
    payload: Dict[str, Any] = {
        "config": config,
        "ellipse": {"a": ellipse.a, "b": ellipse.b},
        "caustic": None,
        "gamma": None,
        "perimeter": None,
        "orbits": [_xy(o.vertices) for o in orbits],
        "orbit_t0s": [o.t0 for o in orbits],
        "loci": {s.selector: _xy(s.points) for s in loci},
        "locus_t0s": {s.selector: list(s.t0s) for s in loci},
        "skipped": {s.selector: s.skipped for s in loci},
        "classes": {k: class_to_dict(v) for k, v in (classes or {}).items()},
        "checks": [c.to_dict() for c in checks],
    }
    if caustic is not None:
        payload["caustic"] = {"lambda": caustic.lam, "a_c": caustic.a_c, "b_c": caustic.b_c}
    if gamma_l is not None:
        payload["gamma"] = gamma_l.gamma
        payload["perimeter"] = gamma_l.perimeter
    return payload


def trajectory_payload(config: Dict[str, Any], ellipse: Ellipse, states: Sequence[BilliardState],
                       lam: float, kind: str) -> Dict[str, Any]:
    payload = build_payload(config, ellipse)
    payload["orbits"] = [_xy(s.p for s in states)]
    payload["orbit_t0s"] = [config.get("t0", 0.0)]
    payload["closed_orbits"] = False
    payload["lambda"] = lam
    payload["caustic_kind"] = kind
    if kind == "elliptic":
        payload["caustic"] = {"lambda": lam, "a_c": (ellipse.a ** 2 - lam) ** 0.5, "b_c": (ellipse.b ** 2 - lam) ** 0.5}
    return payload


def class_to_dict(c: ConicClass) -> Dict[str, Any]:
    return {
        "tag": c.tag.value,
        "metric": c.metric,
        "coeffs": list(c.coeffs.as_tuple()) if c.coeffs is not None else None,
    }


def point_rows(payload: Dict[str, Any]) -> List[Dict[str, Any]]:
    """One row per exported point: orbit vertices under 'orbit', then each locus."""
    rows: List[Dict[str, Any]] = []
    for verts, t0 in zip(payload["orbits"], payload["orbit_t0s"]):
        for k, (x, y) in enumerate(verts):
            rows.append({"center": "orbit", "k": k, "t0": t0, "x": x, "y": y})
    for name in payload["loci"]:
        for k, ((x, y), t0) in enumerate(zip(payload["loci"][name], payload["locus_t0s"][name])):
            rows.append({"center": name, "k": k, "t0": t0, "x": x, "y": y})
    return rows


def points_frame(payload: Dict[str, Any]) -> pd.DataFrame:
    return pd.DataFrame(point_rows(payload), columns=CSV_COLUMNS)


def table_frame(payload: Dict[str, Any]) -> pd.DataFrame:
    """Point rows, or the check report when the payload carries no points."""
    frame = points_frame(payload)
    if frame.empty and payload["checks"]:
        return pd.DataFrame(payload["checks"])
    return frame

# -------- Writers, one per output format --------

class PayloadWriter:
    """Base class for output formats."""
    suffix = ""
    binary = False

    def render(self, payload: Dict[str, Any]) -> str:
        """Text form of the payload (for stdout)."""
        raise NotImplementedError

    def write(self, payload: Dict[str, Any], path: str) -> str:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.render(payload))
        logger.info(f"Wrote {self.suffix.lstrip('.')} output to {path}")
        return path


class JsonWriter(PayloadWriter):
    suffix = ".json"

    def render(self, payload):
        return json_text(payload) + "\n"


class CsvWriter(PayloadWriter):
    suffix = ".csv"

    def render(self, payload):
        return table_frame(payload).to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


class SvgWriter(PayloadWriter):
    suffix = ".svg"

    def render(self, payload):
        return to_svg_text(payload) + "\n"

    def write(self, payload, path):
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        svgwrite(render_payload(payload), path)
        logger.info(f"Wrote svg output to {path}")
        return path


class ParquetWriter(PayloadWriter):
    suffix = ".parquet"
    binary = True

    def render(self, payload):
        raise ValueError("Parquet output is binary; give an output path")

    def write(self, payload, path):
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        table_frame(payload).to_parquet(path, index=False, engine="pyarrow")
        logger.info(f"Wrote parquet output to {path}")
        return path


_WRITERS = {"json": JsonWriter, "csv": CsvWriter, "svg": SvgWriter, "parquet": ParquetWriter}


def make_writer(fmt: str) -> PayloadWriter:
    cls = _WRITERS.get(fmt)
    if not cls:
        raise ValueError(f"Unsupported format: {fmt}. Supported: {', '.join(sorted(_WRITERS))}")
    return cls()
