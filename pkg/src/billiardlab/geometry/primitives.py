# src/billiardlab/geometry/primitives.py
from __future__ import annotations
import math
from typing import List, Tuple

from billiardlab.models import Point2, Ellipse, Line2
from billiardlab.geometry.base import (
    ZERO_NORMAL_TOL, BOUNDARY_TOL, OUTSIDE_TOL, PARALLEL_TOL, TANGENCY_TOL,
    ZeroNormal, NotOnBoundary, InsideEllipse, ParallelLines,
)

TWO_PI = 2.0 * math.pi


def wrap_angle(t: float) -> float:
    """Map an angle into [0, 2*pi)."""
    w = math.fmod(t, TWO_PI)
    if w < 0:
        w += TWO_PI
    return 0.0 if w >= TWO_PI else w


def point_at(e: Ellipse, t: float) -> Point2:
    """Eccentric-angle parametrization (a cos t, b sin t)."""
    return Point2(e.a * math.cos(t), e.b * math.sin(t))


def gradient(e: Ellipse, p: Point2) -> Point2:
    """grad f = 2 (x/a^2, y/b^2); p need not lie on e."""
    return Point2(2.0 * p.x / (e.a * e.a), 2.0 * p.y / (e.b * e.b))


def reflect(v: Point2, n: Point2) -> Point2:
    """Mirror v about the line with normal n: v - 2 (v.n^) n^, renormalized."""
    nn = n.norm()
    if nn < ZERO_NORMAL_TOL:
        raise ZeroNormal(f"Normal too short to reflect about (|n|={nn:.3e})")
    u = n / nn
    w = v - u * (2.0 * v.dot(u))
    return w.unit()


def require_on_boundary(e: Ellipse, p: Point2, tol: float = BOUNDARY_TOL) -> None:
    defect = e.f(p) - 1.0
    if abs(defect) >= tol:
        raise NotOnBoundary(f"Point ({p.x}, {p.y}) is off the boundary (f-1={defect:.3e})")


def tangent_line_at(e: Ellipse, p: Point2) -> Line2:
    require_on_boundary(e, p)
    g = gradient(e, p)
    return Line2.make(p, g.perp())


def tangent_points_from_external(e: Ellipse, q: Point2) -> Tuple[Point2, Point2]:
    """
    Tangency points of the two tangents from q, ordered by eccentric angle in [0, 2*pi).

    In eccentric coordinates the tangent at t is (x/a) cos t + (y/b) sin t = 1, so the
    tangency parameters solve u cos t + w sin t = 1 with (u, w) = (qx/a, qy/b).
    """
    fq = e.f(q)
    if fq <= 1.0 + OUTSIDE_TOL:
        raise InsideEllipse(f"Point ({q.x}, {q.y}) is not outside the ellipse (f={fq:.15g})")
    u, w = q.x / e.a, q.y / e.b
    rho = math.hypot(u, w)
    phi = math.atan2(w, u)
    half = math.acos(1.0 / rho)
    t1, t2 = sorted((wrap_angle(phi - half), wrap_angle(phi + half)))
    return point_at(e, t1), point_at(e, t2)


def intersect_lines(l1: Line2, l2: Line2) -> Point2:
    den = l1.d.cross(l2.d)
    if abs(den) <= PARALLEL_TOL:
        raise ParallelLines(f"Lines are parallel (cross={den:.3e})")
    s = (l2.p - l1.p).cross(l2.d) / den
    return l1.at(s)


def intersect_line_ellipse(e: Ellipse, l: Line2) -> List[Point2]:
    """Real intersections sorted by line parameter; a tangency yields a single point."""
    p, d = l.p, l.d
    qa = (d.x / e.a) ** 2 + (d.y / e.b) ** 2
    qb = 2.0 * (p.x * d.x / (e.a * e.a) + p.y * d.y / (e.b * e.b))
    qc = e.f(p) - 1.0
    disc = qb * qb - 4.0 * qa * qc
    scale = qb * qb + abs(4.0 * qa * qc)
    if abs(disc) <= TANGENCY_TOL * scale:
        return [l.at(-qb / (2.0 * qa))]
    if disc < 0:
        return []
    root = math.sqrt(disc)
    # numerically stable pair of roots
    q = -0.5 * (qb + math.copysign(root, qb))
    s1, s2 = (q / qa, qc / q) if q != 0.0 else (root / (2 * qa), -root / (2 * qa))
    return [l.at(s) for s in sorted((s1, s2))]


def far_intersection(e: Ellipse, p: Point2, d: Point2) -> Tuple[Point2, float]:
    """
    Second boundary hit of the ray from p (on e) along unit d.

    With p on the boundary the quadratic's constant term vanishes, so the far root is
    s = -B/A exactly; returns the point and s (s <= 0 means the ray leaves the table).
    """
    qa = (d.x / e.a) ** 2 + (d.y / e.b) ** 2
    qb = 2.0 * (p.x * d.x / (e.a * e.a) + p.y * d.y / (e.b * e.b))
    s = -qb / qa
    return p + d * s, s


def polar_value(e: Ellipse, q: Point2, z: Point2) -> float:
    """z . grad f(q) / 2; equals 1 when z is on the polar line of q."""
    return (z.x * q.x) / (e.a * e.a) + (z.y * q.y) / (e.b * e.b)


def polygon_area(points) -> float:
    """Signed shoelace area (positive for counterclockwise order)."""
    n = len(points)
    acc = 0.0
    for i in range(n):
        acc += points[i].cross(points[(i + 1) % n])
    return 0.5 * acc


def interior_angles(points) -> List[float]:
    """Angle between the two incident edges at each vertex, in (0, pi)."""
    n = len(points)
    out: List[float] = []
    for i in range(n):
        u = points[i - 1] - points[i]
        w = points[(i + 1) % n] - points[i]
        out.append(math.atan2(abs(u.cross(w)), u.dot(w)))
    return out
