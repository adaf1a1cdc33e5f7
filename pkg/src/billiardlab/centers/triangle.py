# src/billiardlab/centers/triangle.py
from __future__ import annotations
import math
from typing import Tuple

from billiardlab.geometry.base import BilliardLabError
from billiardlab.geometry.primitives import polygon_area
from billiardlab.models import Point2, Triangle, TriangleMetrics

DEGENERATE_AREA = 1e-12   # relative to scale^2

# Common errors
class TriangleError(BilliardLabError): ...
class DegenerateTriangle(TriangleError): ...
class InfinitePoint(TriangleError): ...
class UnsupportedIndex(TriangleError): ...
class DegenerateDerived(TriangleError): ...


def sides(t: Triangle) -> Tuple[float, float, float]:
    """Side lengths, s_i opposite v_i."""
    return (t.v2.dist(t.v3), t.v3.dist(t.v1), t.v1.dist(t.v2))


def _angle_at(p: Point2, q: Point2, r: Point2) -> float:
    u, w = q - p, r - p
    return math.atan2(abs(u.cross(w)), u.dot(w))


def angles(t: Triangle) -> Tuple[float, float, float]:
    v1, v2, v3 = t.vertices
    return (_angle_at(v1, v2, v3), _angle_at(v2, v3, v1), _angle_at(v3, v1, v2))


def require_nondegenerate(t: Triangle) -> float:
    """Returns the unsigned area; raises DegenerateTriangle below the area floor."""
    area = abs(polygon_area(t.vertices))
    scale = t.scale
    if not area > DEGENERATE_AREA * scale * scale:
        raise DegenerateTriangle(f"Triangle area {area:.3e} too small for scale {scale:.3e}")
    return area


def metrics(t: Triangle) -> TriangleMetrics:
    area = require_nondegenerate(t)
    s1, s2, s3 = sides(t)
    s = 0.5 * (s1 + s2 + s3)
    R = s1 * s2 * s3 / (4.0 * area)
    return TriangleMetrics(
        sides=(s1, s2, s3),
        angles=angles(t),
        area=area,
        r=area / s,
        R=R,
        r9=0.5 * R,
        s=s,
    )


def excentral_angles(t: Triangle) -> Tuple[float, float, float]:
    """Excentral angle opposite orbit angle theta_i is (pi - theta_i)/2."""
    require_nondegenerate(t)
    return tuple(0.5 * (math.pi - th) for th in angles(t))  # type: ignore[return-value]
