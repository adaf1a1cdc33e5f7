# src/billiardlab/services/polygons.py
from __future__ import annotations
import logging
import math
from typing import List

import numpy as np

from billiardlab.geometry.base import BilliardLabError, ParallelLines
from billiardlab.geometry.primitives import intersect_lines, tangent_line_at
from billiardlab.models import (
    Circumconic, ConcurrencePoint, CosineCirclePoints, Ellipse, Line2, Orbit, Point2,
    TangentialPolygon, Triangle,
)
from billiardlab.centers.kimberling import kimberling

logger = logging.getLogger(__name__)

SEGMENT_TOL = 1e-12   # slack on the segment parameter before a hit counts as an extension
RANK_TOL = 1e-12

# Common errors
class ConstructionError(BilliardLabError): ...
class ParallelTangents(ConstructionError): ...
class IllConditioned(ConstructionError): ...
class NoIntersection(ConstructionError): ...
class NoConic(ConstructionError): ...


def tangential_polygon(e: Ellipse, o: Orbit) -> TangentialPolygon:
    """Vertex k is where the boundary tangents at orbit vertices k and k+1 meet."""
    lines = [tangent_line_at(e, p) for p in o.vertices]
    verts = []
    for k in range(o.n):
        try:
            verts.append(intersect_lines(lines[k], lines[(k + 1) % o.n]))
        except ParallelLines as exc:
            raise ParallelTangents(f"Tangents at orbit vertices {k} and {(k + 1) % o.n} are parallel") from exc
    return TangentialPolygon(vertices=tuple(verts), source=o)


def tangential_edge(tp: TangentialPolygon, i: int) -> Line2:
    """Edge i lies on the tangent at orbit vertex i: it joins tp vertices i-1 and i."""
    return Line2.through(tp.vertices[(i - 1) % tp.n], tp.vertices[i % tp.n])


def generalized_mittenpunkt(o: Orbit, tp: TangentialPolygon) -> ConcurrencePoint:
    """
    Least-squares meeting point of the lines joining tangential vertex k to the midpoint
    of orbit side k (the side opposite it). The residual is the largest point-line distance.
    """
    normals, offsets = [], []
    for k in range(o.n):
        p, q = o.side(k)
        mid = (p + q) * 0.5
        d = mid - tp.vertices[k]
        if d.norm() == 0.0:
            raise IllConditioned(f"Tangential vertex {k} coincides with the midpoint of its side")
        n = d.unit().perp()
        normals.append(n.as_tuple())
        offsets.append(n.dot(mid))
    A = np.array(normals)
    c = np.array(offsets)
    x, _, rank, sv = np.linalg.lstsq(A, c, rcond=None)
    if rank < 2 or sv[-1] <= RANK_TOL * sv[0]:
        raise IllConditioned(f"Concurrence system is rank-deficient (rank={rank})")
    residual = float(np.max(np.abs(A @ x - c)))
    return ConcurrencePoint(point=Point2(float(x[0]), float(x[1])), residual=residual)


def _foot(p: Point2, q: Point2, r: Point2) -> Point2:
    d = (r - q).unit()
    return q + d * (p - q).dot(d)


def generalized_extouchpoints(o: Orbit, tp: TangentialPolygon) -> List[Point2]:
    """Feet of the perpendiculars from tangential vertex k onto orbit side k."""
    out = []
    for k in range(o.n):
        p, q = o.side(k)
        out.append(_foot(tp.vertices[k], p, q))
    return out


def circle_locus_point(o: Orbit, tp: TangentialPolygon, i: int) -> Point2:
    """Tangential edge i meets the reflection through the origin of edge i+1."""
    edge = tangential_edge(tp, i)
    nxt = tangential_edge(tp, i + 1)
    mirrored = Line2(-nxt.p, -nxt.d)
    return intersect_lines(edge, mirrored)


def _segment_param(a: Point2, b: Point2, p: Point2) -> float:
    d = b - a
    return (p - a).dot(d) / d.dot(d)


def cosine_circle_q_points(e: Ellipse, o: Orbit) -> CosineCirclePoints:
    """
    Tangent at P' = -P1 cut by the two excentral edges it crosses.

    The excentral edge through orbit vertex i is tangential edge i; the edge through P1 is
    parallel to the tangent at P' and is never hit. If a hit falls outside its segment the
    line intersection is kept and the result is flagged as extended.
    """
    if o.n != 3:
        raise ValueError(f"Cosine-circle points need a 3-periodic orbit, got n={o.n}")
    tp = tangential_polygon(e, o)
    tangent = tangent_line_at(e, -o.vertices[0])
    hits = []
    extended = False
    for i in (1, 2):
        a, b = tp.vertices[(i - 1) % 3], tp.vertices[i]
        try:
            q = intersect_lines(tangent, Line2.through(a, b))
        except ParallelLines as exc:
            raise NoIntersection(f"Tangent at -P1 misses excentral edge {i}") from exc
        s = _segment_param(a, b, q)
        if s < -SEGMENT_TOL or s > 1.0 + SEGMENT_TOL:
            extended = True
        hits.append(q)
    if extended:
        logger.debug(f"Cosine-circle hit on an edge extension for orbit t0={o.t0}")
    return CosineCirclePoints(q1=hits[0], q2=hits[1], extended=extended)


def _chord_angle(n: Point2, w: Point2) -> float:
    return math.atan2(abs(n.cross(w)), n.dot(w))


def circumbilliard(t: Triangle) -> Circumconic:
    """
    The circumconic centered at the mittenpunkt, with the triangle's reflection defect
    at each vertex (difference of the angles the two chords make with the conic normal).
    """
    c = kimberling(t, 9)
    rows, ones = [], []
    for v in t.vertices:
        u, w = v.x - c.x, v.y - c.y
        rows.append((u * u, u * w, w * w))
        ones.append(1.0)
    M = np.array(rows)
    try:
        if np.linalg.cond(M) > 1.0 / RANK_TOL:
            raise NoConic(f"Centered-conic system is singular (cond={np.linalg.cond(M):.3e})")
        A, B, C = np.linalg.solve(M, np.array(ones))
    except np.linalg.LinAlgError as exc:
        raise NoConic("Centered-conic system is singular") from exc

    Q = np.array([[A, 0.5 * B], [0.5 * B, C]])
    eig = np.linalg.eigvalsh(Q)
    if eig[0] <= 0.0:
        raise NoConic(f"Circumconic centered at X9 is not an ellipse (eigenvalues {eig[0]:.3e}, {eig[1]:.3e})")
    major, minor = 1.0 / math.sqrt(eig[0]), 1.0 / math.sqrt(eig[1])

    defects = []
    v = t.vertices
    for i in range(3):
        u, w = v[i].x - c.x, v[i].y - c.y
        n = Point2(2.0 * A * u + B * w, B * u + 2.0 * C * w)
        prev, nxt = v[i - 1] - v[i], v[(i + 1) % 3] - v[i]
        defects.append(abs(_chord_angle(n, prev) - _chord_angle(n, nxt)))
    return Circumconic(
        center=c,
        coeffs=(float(A), float(B), float(C)),
        semi_axes=(major, minor),
        reflection_defects=tuple(defects),  # type: ignore[arg-type]
    )
