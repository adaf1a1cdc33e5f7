# src/billiardlab/centers/kimberling.py
from __future__ import annotations
import math

from billiardlab.models import Point2, Triangle, TriangleMetrics, TrilinearTriple
from billiardlab.centers.base import TriangleCenter, TrilinearCenter, register_center, make_center
from billiardlab.centers.triangle import InfinitePoint, require_nondegenerate

# all three angle gaps below ~1e-8 rad: the incircle and nine-point circle coincide
EQUILATERAL_WEIGHT = 1e-16


def _cyclic(m: TriangleMetrics, fn) -> TrilinearTriple:
    """Apply fn(i, j, k) over the three cyclic index rotations."""
    return TrilinearTriple(fn(0, 1, 2), fn(1, 2, 0), fn(2, 0, 1))


@register_center
class Incenter(TrilinearCenter):
    index = 1
    name = "incenter"

    def trilinears(self, m):
        return TrilinearTriple(1.0, 1.0, 1.0)


@register_center
class Barycenter(TrilinearCenter):
    index = 2
    name = "barycenter"

    def trilinears(self, m):
        s = m.sides
        return TrilinearTriple(1.0 / s[0], 1.0 / s[1], 1.0 / s[2])


@register_center
class Circumcenter(TrilinearCenter):
    index = 3
    name = "circumcenter"

    def trilinears(self, m):
        return _cyclic(m, lambda i, j, k: math.cos(m.angles[i]))


@register_center
class Orthocenter(TrilinearCenter):
    index = 4
    name = "orthocenter"

    def trilinears(self, m):
        # sec(theta_i) scaled by prod(cos): stays finite for right triangles
        th = m.angles
        return _cyclic(m, lambda i, j, k: math.cos(th[j]) * math.cos(th[k]))


@register_center
class NinePointCenter(TrilinearCenter):
    index = 5
    name = "nine-point center"

    def trilinears(self, m):
        th = m.angles
        return _cyclic(m, lambda i, j, k: math.cos(th[j] - th[k]))


@register_center
class SymmedianPoint(TrilinearCenter):
    index = 6
    name = "symmedian point"

    def trilinears(self, m):
        return TrilinearTriple(*m.sides)


@register_center
class Mittenpunkt(TrilinearCenter):
    index = 9
    name = "mittenpunkt"

    def trilinears(self, m):
        s = m.sides
        return _cyclic(m, lambda i, j, k: s[j] + s[k] - s[i])


@register_center
class FeuerbachPoint(TrilinearCenter):
    index = 11
    name = "feuerbach point"

    def trilinears(self, m):
        # 1 - cos(x) written as 2 sin^2(x/2) to keep precision near isosceles
        th = m.angles
        tri = _cyclic(m, lambda i, j, k: 2.0 * math.sin(0.5 * (th[j] - th[k])) ** 2)
        if max(tri.as_tuple()) < EQUILATERAL_WEIGHT:
            raise InfinitePoint("X11 is undefined for an equilateral triangle")
        return tri


@register_center
class FeuerbachAnticomplement(TriangleCenter):
    index = 100
    name = "anticomplement of the feuerbach point"

    def locate(self, t: Triangle) -> Point2:
        return anticomplement(make_center(11).locate(t), t)


def kimberling(t: Triangle, index: int) -> Point2:
    require_nondegenerate(t)
    return make_center(index).locate(t)


def anticomplement(p: Point2, t: Triangle) -> Point2:
    """Double-length reflection about the barycenter: X2 + 2 (X2 - p)."""
    g = make_center(2).locate(t)
    return g + (g - p) * 2.0
