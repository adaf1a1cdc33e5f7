# src/billiardlab/services/loci.py
from __future__ import annotations
import logging
from typing import Callable, List, Sequence

import numpy as np

from billiardlab.centers.derived import derived_triangle
from billiardlab.centers.kimberling import kimberling
from billiardlab.centers.triangle import TriangleError
from billiardlab.geometry.base import GeometryError
from billiardlab.geometry.conics import classify_locus
from billiardlab.models import (
    ConfocalCaustic, ConicClass, DerivedKind, Ellipse, LocusSample, OrbitFamily, Point2, Triangle,
)
from billiardlab.services.polygons import ConstructionError
from billiardlab.utils.config import ConfigError
from billiardlab.utils.selectors import LocusSelector, resolve_selector

logger = logging.getLogger(__name__)

PointFn = Callable[[Triangle], Point2]

# Failures that mark a single family member as degenerate for a selector
SKIPPABLE = (TriangleError, ConstructionError, GeometryError)


def _composite(name: str) -> PointFn:
    if name == "excenters":
        return lambda t: derived_triangle(t, DerivedKind.EXCENTRAL).v1
    if name == "anticompl-intouch":
        return lambda t: derived_triangle(derived_triangle(t, DerivedKind.ANTICOMPLEMENTARY), DerivedKind.INTOUCH).v1
    if name == "orthic-incenter":
        return lambda t: kimberling(derived_triangle(t, DerivedKind.ORTHIC), 1)
    raise ConfigError(f"No evaluator for selector {name!r}")


def point_fn(sel: LocusSelector) -> PointFn:
    """Evaluator mapping an orbit triangle to the tracked point."""
    if sel.index is not None:
        index = sel.index
        return lambda t: kimberling(t, index)
    if sel.kind is not None:
        kind = sel.kind
        return lambda t: derived_triangle(t, kind).v1
    return _composite(sel.name)


def sweep_locus(fam: OrbitFamily, selector: str | LocusSelector) -> LocusSample:
    """
    Track one selector over every member of a 3-periodic family. Members where the
    construction degenerates are skipped and counted.
    """
    if fam.n != 3:
        raise ConfigError(f"Locus selectors act on triangles; family has n={fam.n}")
    sel = selector if isinstance(selector, LocusSelector) else resolve_selector(selector)
    fn = point_fn(sel)
    points: List[Point2] = []
    t0s: List[float] = []
    skipped = 0
    for o in fam.samples:
        try:
            points.append(fn(Triangle.from_orbit(o)))
            t0s.append(o.t0)
        except SKIPPABLE as e:
            skipped += 1
            logger.debug(f"{sel.name}: skipping t0={o.t0:.6f} ({type(e).__name__}: {e})")
    if skipped:
        logger.warning(f"{sel.name}: skipped {skipped} of {fam.m} degenerate family members")
    return LocusSample(selector=sel.name, points=tuple(points), t0s=tuple(t0s), skipped=skipped)


def classify_sample(sample: LocusSample, e: Ellipse) -> ConicClass:
    return classify_locus(sample.points, e.a)


def caustic_phases(points: Sequence[Point2], caustic: ConfocalCaustic) -> np.ndarray:
    """Unwrapped eccentric angles of points on the caustic, in sweep order."""
    xy = np.array([(p.x, p.y) for p in points], dtype=float)
    raw = np.arctan2(xy[:, 1] / caustic.b_c, xy[:, 0] / caustic.a_c)
    return np.unwrap(raw)
