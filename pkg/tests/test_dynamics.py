"""
Billiard map, confocal caustics and N-periodic families.

Closed forms used throughout: on the unit circle the 3-periodic caustic is the circle
of radius 1/2 (lambda = 3/4) and the 4-periodic one has radius 1/sqrt(2) (lambda = 1/2).

Run with: pytest tests/test_dynamics.py -v
"""

import math

import pytest

from billiardlab.geometry.primitives import point_at
from billiardlab.models import BilliardState, Ellipse, Point2
from billiardlab.services import dynamics
from billiardlab.services.dynamics import (
    ClosureFailure, InvalidCaustic, InvalidN, InvalidWinding, NoTangent,
)


def close(p, q, tol=1e-12):
    return p.dist(q) < tol


# =============================================================================
# 1. BILLIARD MAP
# =============================================================================


class TestBilliardMap:
    def test_diameter_bounces_straight_back(self, circle):
        s = dynamics.billiard_map(circle, BilliardState(Point2(1.0, 0.0), Point2(-1.0, 0.0)))
        assert close(s.p, Point2(-1.0, 0.0))
        assert close(s.v, Point2(1.0, 0.0))

    def test_chord_to_one_third_turn(self, circle):
        target = Point2(-0.5, math.sqrt(3) / 2)
        p = Point2(1.0, 0.0)
        s = dynamics.billiard_map(circle, BilliardState(p, (target - p).unit()))
        assert close(s.p, target)
        assert s.v.norm() == pytest.approx(1.0, abs=1e-15)

    def test_major_axis_two_cycle(self, ellipse2):
        s0 = BilliardState(Point2(2.0, 0.0), Point2(-1.0, 0.0))
        s2 = dynamics.billiard_map(ellipse2, dynamics.billiard_map(ellipse2, s0))
        assert close(s2.p, s0.p)

    def test_start_must_be_on_boundary(self, ellipse15):
        from billiardlab.geometry.base import NotOnBoundary

        with pytest.raises(NotOnBoundary):
            dynamics.billiard_map(ellipse15, BilliardState(Point2(0.0, 0.0), Point2(1.0, 0.0)))

    def test_outward_ray_rejected(self, circle):
        with pytest.raises(dynamics.TangentRay):
            dynamics.billiard_map(circle, BilliardState(Point2(1.0, 0.0), Point2(1.0, 0.0)))

    def test_trajectory_length_and_boundary(self, ellipse15):
        p = point_at(ellipse15, 0.4)
        states = dynamics.trajectory(ellipse15, BilliardState(p, Point2(-1.0, 0.2).unit()), 50)
        assert len(states) == 51
        for s in states:
            assert abs(ellipse15.f(s.p) - 1.0) < 1e-10

    def test_trajectory_conserves_caustic(self, ellipse15):
        p = point_at(ellipse15, 0.4)
        states = dynamics.trajectory(ellipse15, BilliardState(p, Point2(-1.0, 0.2).unit()), 50)
        lams = [dynamics.caustic_parameter(ellipse15, s.p, s.v) for s in states]
        assert max(lams) - min(lams) < 1e-9
        assert dynamics.caustic_kind(ellipse15, states[0].p, states[0].v) == "elliptic"

    def test_chord_between_foci_is_hyperbolic(self, ellipse15):
        p = Point2(0.0, -1.0)
        assert dynamics.caustic_kind(ellipse15, p, Point2(0.0, 1.0)) == "hyperbolic"


# =============================================================================
# 2. CAUSTICS AND THE TANGENT MAP
# =============================================================================


class TestCaustics:
    def test_make_caustic_is_confocal(self, ellipse15):
        c = dynamics.make_caustic(ellipse15, 0.3)
        assert c.a_c ** 2 - c.b_c ** 2 == pytest.approx(ellipse15.focal_sq)

    @pytest.mark.parametrize("lam", [0.0, 1.0, -0.1, 2.0])
    def test_make_caustic_range(self, ellipse15, lam):
        with pytest.raises(InvalidCaustic):
            dynamics.make_caustic(ellipse15, lam)

    def test_next_tangent_vertex_circle(self, circle):
        c = dynamics.make_caustic(circle, 0.75)
        nxt = dynamics.next_tangent_vertex(circle, c, Point2(1.0, 0.0))
        assert close(nxt, Point2(-0.5, math.sqrt(3) / 2))

    def test_next_tangent_vertex_clockwise(self, circle):
        c = dynamics.make_caustic(circle, 0.75)
        nxt = dynamics.next_tangent_vertex(circle, c, Point2(1.0, 0.0), orientation=-1)
        assert close(nxt, Point2(-0.5, -math.sqrt(3) / 2))

    def test_no_tangent_from_inside_caustic(self, ellipse15):
        c = dynamics.make_caustic(ellipse15, 0.5)
        with pytest.raises(NoTangent):
            dynamics.next_tangent_vertex(ellipse15, c, Point2(0.0, 0.0))

    @pytest.mark.parametrize("lam, rho", [(0.75, 1 / 3), (0.5, 1 / 4)])
    def test_rotation_number_on_circle(self, circle, lam, rho):
        assert dynamics.rotation_number(circle, lam) == pytest.approx(rho, abs=1e-9)

    def test_rotation_number_increases_with_lambda(self, ellipse15):
        rhos = [dynamics.rotation_number(ellipse15, lam) for lam in (0.05, 0.3, 0.6, 0.9)]
        assert all(r0 < r1 for r0, r1 in zip(rhos, rhos[1:]))
        assert 0.0 < rhos[0] and rhos[-1] < 0.5

    def test_rotation_number_needs_steps(self, ellipse15):
        with pytest.raises(ValueError):
            dynamics.rotation_number(ellipse15, 0.5, steps=10)


# =============================================================================
# 3. FINDING PERIODIC CAUSTICS
# =============================================================================


class TestFindCaustic:
    @pytest.mark.parametrize("n, lam", [(3, 0.75), (4, 0.5)])
    def test_circle_closed_forms(self, circle, n, lam):
        assert dynamics.find_caustic(circle, n).lam == pytest.approx(lam, abs=1e-12)

    def test_larger_n_gives_larger_caustic(self, ellipse15):
        lams = [dynamics.find_caustic(ellipse15, n).lam for n in (3, 4, 5, 6)]
        assert all(l0 > l1 for l0, l1 in zip(lams, lams[1:]))

    def test_rotation_number_at_root(self, ellipse15):
        c = dynamics.find_caustic(ellipse15, 5)
        assert dynamics.rotation_number(ellipse15, c.lam, steps=500) == pytest.approx(0.2, abs=1e-6)

    def test_n_too_small(self, ellipse15):
        with pytest.raises(InvalidN):
            dynamics.find_caustic(ellipse15, 2)

    def test_winding_needs_experimental_flag(self, ellipse15):
        with pytest.raises(InvalidWinding):
            dynamics.find_caustic(ellipse15, 5, winding=2)

    def test_winding_must_be_coprime(self, ellipse15):
        with pytest.raises(InvalidWinding):
            dynamics.find_caustic(ellipse15, 6, winding=2, allow_self_intersecting=True)

    def test_winding_below_half_turn(self, ellipse15):
        with pytest.raises(InvalidWinding):
            dynamics.find_caustic(ellipse15, 5, winding=3, allow_self_intersecting=True)

    def test_self_intersecting_pentagram_closes(self, ellipse15):
        c = dynamics.find_caustic(ellipse15, 5, winding=2, allow_self_intersecting=True)
        o = dynamics.orbit_at(ellipse15, c, 0.3, 5, winding=2)
        assert o.n == 5
        assert o.winding == 2


# =============================================================================
# 4. ORBITS AND FAMILIES
# =============================================================================


class TestOrbits:
    def test_circle_equilateral(self, circle):
        c = dynamics.find_caustic(circle, 3)
        o = dynamics.orbit_at(circle, c, 0.0, 3)
        for k, p in enumerate(o.vertices):
            assert close(p, point_at(circle, 2 * math.pi * k / 3), tol=1e-12)
        gl = dynamics.gamma_and_perimeter(circle, o)
        assert gl.perimeter == pytest.approx(3 * math.sqrt(3), abs=1e-12)
        assert gl.gamma == pytest.approx(math.sqrt(3) / 2, abs=1e-12)

    def test_circle_square(self, circle):
        c = dynamics.find_caustic(circle, 4)
        gl = dynamics.gamma_and_perimeter(circle, dynamics.orbit_at(circle, c, 0.2, 4))
        assert gl.product == pytest.approx(4.0, abs=1e-12)

    def test_orbit_from_major_vertex_is_symmetric(self, ellipse15):
        c = dynamics.find_caustic(ellipse15, 3)
        _, p1, p2 = dynamics.orbit_at(ellipse15, c, 0.0, 3).vertices
        assert p1.x == pytest.approx(p2.x, abs=1e-9)
        assert p1.y == pytest.approx(-p2.y, abs=1e-9)

    def test_orbit_is_counterclockwise(self, family3):
        from billiardlab.geometry.primitives import polygon_area

        for o in family3.samples:
            assert polygon_area(o.vertices) > 0

    def test_stale_caustic_fails_closure(self, ellipse15):
        c3 = dynamics.find_caustic(ellipse15, 3)
        with pytest.raises(ClosureFailure):
            dynamics.orbit_at(ellipse15, c3, 0.0, 4)

    def test_chords_touch_the_caustic(self, family5):
        for o in family5.samples:
            for i in range(o.n):
                assert dynamics.chord_caustic_gap(o.caustic, *o.side(i)) < 1e-9

    def test_chord_parameter_matches_caustic(self, family3):
        o = family3.samples[5]
        for i in range(3):
            p, q = o.side(i)
            assert dynamics.caustic_parameter(family3.ellipse, p, q - p) == pytest.approx(o.caustic.lam, abs=1e-9)

    def test_billiard_map_reproduces_orbit(self, family3):
        e = family3.ellipse
        o = family3.samples[3]
        s = BilliardState(o.vertices[0], (o.vertices[1] - o.vertices[0]).unit())
        s = dynamics.billiard_map(e, dynamics.billiard_map(e, s))
        assert close(s.p, o.vertices[2], tol=1e-9)

    def test_gamma_equal_at_every_vertex(self, family4):
        for o in family4.samples:
            g = dynamics.orbit_gamma(family4.ellipse, o)
            assert max(g) - min(g) < 1e-10

    def test_four_periodic_are_parallelograms(self, family4):
        for o in family4.samples:
            v = o.vertices
            assert close(v[0] + v[2], Point2(0, 0), tol=1e-9)
            assert close(v[1] + v[3], Point2(0, 0), tol=1e-9)

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("ratio", [1.5, 2.0])
    def test_perimeter_is_conserved(self, n, ratio):
        fam = dynamics.family(Ellipse(ratio, 1.0), n, 16)
        lengths = [dynamics.perimeter(o) for o in fam.samples]
        assert (max(lengths) - min(lengths)) / fam.gamma_l.perimeter < 1e-8

    def test_family_sample_spacing(self, family3):
        assert family3.m == 64
        assert family3.t0s[1] == pytest.approx(2 * math.pi / 64)

    def test_family_needs_samples(self, ellipse15):
        with pytest.raises(ValueError):
            dynamics.family(ellipse15, 3, 4)
