# src/billiardlab/centers/derived.py
from __future__ import annotations
from typing import Callable, Dict, List

from billiardlab.geometry.primitives import polygon_area
from billiardlab.models import DerivedKind, Point2, Triangle, TriangleMetrics, TrilinearTriple
from billiardlab.centers.base import center_from_trilinear
from billiardlab.centers.kimberling import anticomplement, make_center
from billiardlab.centers.triangle import (
    DEGENERATE_AREA, DegenerateDerived, metrics,
)

_CYCLE = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _foot(p: Point2, q: Point2, r: Point2) -> Point2:
    """Foot of the perpendicular from p onto line qr."""
    d = (r - q).unit()
    return q + d * (p - q).dot(d)


def _along(q: Point2, r: Point2, dist: float) -> Point2:
    return q + (r - q).unit() * dist


def excenters(t: Triangle, m: TriangleMetrics) -> List[Point2]:
    out = []
    for i in range(3):
        w = [1.0, 1.0, 1.0]
        w[i] = -1.0
        out.append(center_from_trilinear(t, TrilinearTriple(*w), m))
    return out


def _excentral(t, m):
    return excenters(t, m)


def _medial(t, m):
    v = t.vertices
    return [(v[j] + v[k]) * 0.5 for _, j, k in _CYCLE]


def _orthic(t, m):
    v = t.vertices
    return [_foot(v[i], v[j], v[k]) for i, j, k in _CYCLE]


def _intouch(t, m):
    # tangent length from v_j is s - s_j
    v, s = t.vertices, m.sides
    return [_along(v[j], v[k], m.s - s[j]) for _, j, k in _CYCLE]


def _extouch(t, m):
    # excircle opposite v_i touches side v_j v_k at s - s_k from v_j
    v, s = t.vertices, m.sides
    return [_along(v[j], v[k], m.s - s[k]) for _, j, k in _CYCLE]


def _feuerbach(t, m):
    # nine-point circle is externally tangent to each excircle: the contact sits on the
    # segment of centers at distance r9 from X5
    n5 = make_center(5).locate(t)
    return [n5 + (j - n5).unit() * m.r9 for j in excenters(t, m)]


def _anticomplementary(t, m):
    return [anticomplement(p, t) for p in t.vertices]


_CONSTRUCTIONS: Dict[DerivedKind, Callable[[Triangle, TriangleMetrics], List[Point2]]] = {
    DerivedKind.EXCENTRAL: _excentral,
    DerivedKind.MEDIAL: _medial,
    DerivedKind.ORTHIC: _orthic,
    DerivedKind.INTOUCH: _intouch,
    DerivedKind.EXTOUCH: _extouch,
    DerivedKind.FEUERBACH: _feuerbach,
    DerivedKind.ANTICOMPLEMENTARY: _anticomplementary,
}


def derived_triangle(t: Triangle, kind: DerivedKind) -> Triangle:
    """Derived triangle; vertex i is the one associated with (or opposite to) v_i."""
    m = metrics(t)
    pts = _CONSTRUCTIONS[kind](t, m)
    out = Triangle(*pts)
    area = abs(polygon_area(out.vertices))
    scale = t.scale
    if not area > DEGENERATE_AREA * scale * scale:
        raise DegenerateDerived(f"{kind.value} triangle collapses (area={area:.3e})")
    return out
