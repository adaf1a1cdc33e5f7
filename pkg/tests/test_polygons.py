"""
Tangential polygons and the constructions built on them: generalized mittenpunkt,
generalized extouchpoints, the 1/gamma circle, the cosine-circle points and the
circumbilliard.

Run with: pytest tests/test_polygons.py -v
"""

import math

import pytest

from billiardlab.centers.derived import derived_triangle
from billiardlab.models import DerivedKind, Ellipse, Orbit, Point2, Triangle
from billiardlab.services import dynamics
from billiardlab.services.polygons import (
    ParallelTangents, circle_locus_point, circumbilliard, cosine_circle_q_points,
    generalized_extouchpoints, generalized_mittenpunkt, tangential_edge, tangential_polygon,
)


def close(p, q, tol=1e-12):
    return p.dist(q) < tol


# =============================================================================
# 1. TANGENTIAL POLYGON
# =============================================================================


class TestTangentialPolygon:
    def test_circle_triangle_doubles_radius(self, circle_family3):
        o = circle_family3.samples[0]
        tp = tangential_polygon(circle_family3.ellipse, o)
        for p in tp.vertices:
            assert p.norm() == pytest.approx(2.0, abs=1e-12)

    def test_four_periodic_tangential_is_on_orthoptic(self, family4):
        e = family4.ellipse
        for o in family4.samples[::4]:
            for p in tangential_polygon(e, o).vertices:
                assert p.norm() == pytest.approx(math.hypot(e.a, e.b), abs=1e-9)

    def test_three_periodic_tangential_is_excentral(self, family3):
        e = family3.ellipse
        for o in family3.samples[::8]:
            tp = tangential_polygon(e, o)
            ex = derived_triangle(Triangle.from_orbit(o), DerivedKind.EXCENTRAL)
            for k in range(3):
                assert close(tp.vertices[k], ex.vertices[(k + 2) % 3], tol=1e-9)

    def test_edge_lies_on_tangent(self, family5):
        e = family5.ellipse
        o = family5.samples[1]
        tp = tangential_polygon(e, o)
        for i in range(o.n):
            edge = tangential_edge(tp, i)
            assert abs(edge.normal().dot(o.vertices[i] - edge.p)) < 1e-9

    def test_antipodal_vertices_rejected(self, circle):
        c = dynamics.make_caustic(circle, 0.5)
        o = Orbit(vertices=(Point2(1, 0), Point2(-1, 0), Point2(0, 1)), caustic=c)
        with pytest.raises(ParallelTangents):
            tangential_polygon(circle, o)


# =============================================================================
# 2. CONCURRENCES AND FEET
# =============================================================================


class TestGeneralizedCenters:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_mittenpunkt_at_center(self, n):
        e = Ellipse(1.25, 1.0)
        c = dynamics.find_caustic(e, n)
        for t0 in (0.1, 0.9, 2.0):
            o = dynamics.orbit_at(e, c, t0, n)
            cp = generalized_mittenpunkt(o, tangential_polygon(e, o))
            assert cp.point.norm() < 1e-8 * e.a
            assert cp.residual < 1e-8 * e.a

    def test_mittenpunkt_in_circle(self, circle_family4):
        o = circle_family4.samples[3]
        cp = generalized_mittenpunkt(o, tangential_polygon(circle_family4.ellipse, o))
        assert cp.point.norm() < 1e-12

    def test_extouch_feet_match_extouch_triangle(self, family3):
        e = family3.ellipse
        o = family3.samples[7]
        feet = generalized_extouchpoints(o, tangential_polygon(e, o))
        ext = derived_triangle(Triangle.from_orbit(o), DerivedKind.EXTOUCH)
        for k in range(3):
            assert close(feet[k], ext.vertices[(k + 2) % 3], tol=1e-9)

    def test_extouch_feet_on_caustic(self, family5):
        e, c = family5.ellipse, family5.caustic
        for o in family5.samples[::4]:
            for p in generalized_extouchpoints(o, tangential_polygon(e, o)):
                assert abs(c.f(p) - 1.0) < 1e-8

    def test_extouch_feet_are_midpoints_in_circle(self, circle_family3):
        o = circle_family3.samples[2]
        feet = generalized_extouchpoints(o, tangential_polygon(circle_family3.ellipse, o))
        for k, p in enumerate(feet):
            a, b = o.side(k)
            assert close(p, (a + b) * 0.5, tol=1e-12)


# =============================================================================
# 3. THE 1/GAMMA CIRCLES
# =============================================================================


class TestCircles:
    @pytest.mark.parametrize("fixture, radius", [
        ("circle_family3", 2 / math.sqrt(3)),
        ("circle_family4", math.sqrt(2)),
    ])
    def test_circle_locus_closed_forms(self, request, fixture, radius):
        fam = request.getfixturevalue(fixture)
        o = fam.samples[5]
        tp = tangential_polygon(fam.ellipse, o)
        for i in range(o.n):
            assert circle_locus_point(o, tp, i).norm() == pytest.approx(radius, abs=1e-12)

    @pytest.mark.parametrize("fixture", ["family3", "family4", "family5"])
    def test_circle_locus_radius_is_inverse_gamma(self, request, fixture):
        fam = request.getfixturevalue(fixture)
        for o in fam.samples[::4]:
            tp = tangential_polygon(fam.ellipse, o)
            for i in range(o.n):
                assert circle_locus_point(o, tp, i).norm() == pytest.approx(1 / fam.gamma_l.gamma, abs=1e-8)

    def test_cosine_circle_radius(self, family3):
        r = 1 / family3.gamma_l.gamma
        for o in family3.samples[::4]:
            q = cosine_circle_q_points(family3.ellipse, o)
            assert q.q1.norm() == pytest.approx(r, abs=1e-8)
            assert q.q2.norm() == pytest.approx(r, abs=1e-8)

    def test_cosine_circle_in_circle(self, circle_family3):
        q = cosine_circle_q_points(circle_family3.ellipse, circle_family3.samples[0])
        assert q.q1.norm() == pytest.approx(2 / math.sqrt(3), abs=1e-12)
        assert q.q2.norm() == pytest.approx(2 / math.sqrt(3), abs=1e-12)

    def test_cosine_circle_needs_triangles(self, family4):
        with pytest.raises(ValueError):
            cosine_circle_q_points(family4.ellipse, family4.samples[0])


# =============================================================================
# 4. CIRCUMBILLIARD
# =============================================================================


class TestCircumbilliard:
    def test_equilateral_gives_circumcircle(self):
        h = math.sqrt(3) / 2
        cb = circumbilliard(Triangle(Point2(1, 0), Point2(-0.5, h), Point2(-0.5, -h)))
        assert cb.semi_axes == pytest.approx((1.0, 1.0), abs=1e-12)
        assert max(cb.reflection_defects) < 1e-12

    def test_right_triangle_reflects(self, right_triangle):
        cb = circumbilliard(right_triangle)
        assert max(cb.reflection_defects) < 1e-8
        assert cb.semi_axes[0] >= cb.semi_axes[1]

    def test_orbit_recovers_billiard(self, family3):
        e = family3.ellipse
        for o in family3.samples[::8]:
            cb = circumbilliard(Triangle.from_orbit(o))
            assert cb.center.norm() < 1e-9
            assert cb.semi_axes[0] == pytest.approx(e.a, rel=1e-7)
            assert cb.semi_axes[1] == pytest.approx(e.b, rel=1e-7)
