# src/billiardlab/services/dynamics.py
from __future__ import annotations
import logging
import math
from typing import List, Tuple

import numpy as np
from scipy.optimize import bisect

from billiardlab.geometry.base import BilliardLabError, InsideEllipse
from billiardlab.geometry.primitives import (
    TWO_PI, far_intersection, gradient, point_at, reflect, require_on_boundary,
    tangent_points_from_external, wrap_angle,
)
from billiardlab.models import (
    BilliardState, CausticKind, ConfocalCaustic, Ellipse, GammaL, Orbit, OrbitFamily, Point2,
)

logger = logging.getLogger(__name__)

LAMBDA_MARGIN = 1e-9        # bracket clamp, relative to b^2
LAMBDA_XTOL = 1e-14         # bisection tolerance, relative to b^2
MAX_BISECTIONS = 200
CLOSURE_TOL = 1e-9          # orbit closure, relative to a
SCAN_POINTS = 64

# Common errors
class DynamicsError(BilliardLabError): ...
class InvalidCaustic(DynamicsError): ...
class TangentRay(DynamicsError): ...
class NoTangent(DynamicsError): ...
class NoConvergence(DynamicsError): ...
class InvalidN(DynamicsError): ...
class InvalidWinding(DynamicsError): ...
class ClosureFailure(DynamicsError): ...


def make_caustic(e: Ellipse, lam: float) -> ConfocalCaustic:
    if not 0.0 < lam < e.b * e.b:
        raise InvalidCaustic(f"Confocal parameter must lie in (0, b^2={e.b * e.b}), got {lam}")
    return ConfocalCaustic(lam=lam, a_c=math.sqrt(e.a * e.a - lam), b_c=math.sqrt(e.b * e.b - lam))

# --- Billiard map ---

def billiard_map(e: Ellipse, s: BilliardState) -> BilliardState:
    """Fly to the next boundary hit and reflect about the normal there."""
    require_on_boundary(e, s.p)
    p_next, dist = far_intersection(e, s.p, s.v)
    if dist <= 1e-12 * e.a:
        raise TangentRay(f"Ray from ({s.p.x}, {s.p.y}) leaves the boundary tangentially")
    return BilliardState(p_next, reflect(s.v, gradient(e, p_next)))


def trajectory(e: Ellipse, s: BilliardState, bounces: int) -> List[BilliardState]:
    """Open trajectory: the start state plus `bounces` successive states."""
    out = [s]
    for _ in range(bounces):
        out.append(billiard_map(e, out[-1]))
    return out


def joachimsthal(e: Ellipse, p: Point2, v: Point2) -> float:
    """gamma = |1/2 v . grad f(p)|."""
    require_on_boundary(e, p)
    return abs(0.5 * v.dot(gradient(e, p)))


def caustic_parameter(e: Ellipse, p: Point2, v: Point2) -> float:
    """
    Confocal parameter of the conic tangent to the line through p along v.

    A line n.x = h touches x^2/(a^2-l) + y^2/(b^2-l) = 1 iff (a^2-l) n_x^2 + (b^2-l) n_y^2 = h^2.
    """
    n = v.unit().perp()
    h = n.dot(p)
    return e.a * e.a * n.x * n.x + e.b * e.b * n.y * n.y - h * h


def caustic_kind(e: Ellipse, p: Point2, v: Point2) -> CausticKind:
    """Elliptic when the chord passes outside the foci, hyperbolic when between them."""
    return "elliptic" if caustic_parameter(e, p, v) < e.b * e.b else "hyperbolic"


def chord_caustic_gap(c: ConfocalCaustic, p: Point2, q: Point2) -> float:
    """Distance between the line pq and the caustic (0 when tangent)."""
    n = (q - p).unit().perp()
    h = abs(n.dot(p))
    support = math.hypot(c.a_c * n.x, c.b_c * n.y)
    return abs(h - support)

# --- Tangent construction and rotation number ---

def next_tangent_vertex(e: Ellipse, c: ConfocalCaustic, p: Point2, orientation: int = 1) -> Point2:
    """
    Next bounce: tangent from p to the caustic on the side given by orientation
    (+1 counterclockwise), continued to the far boundary point.
    """
    try:
        t1, t2 = tangent_points_from_external(c.ellipse, p)
    except InsideEllipse as exc:
        raise NoTangent(f"Point ({p.x}, {p.y}) lies inside the caustic") from exc
    touch = t1 if orientation * p.cross(t1 - p) > 0 else t2
    p_next, _ = far_intersection(e, p, (touch - p).unit())
    return p_next


def _advance(e: Ellipse, c: ConfocalCaustic, t0: float, steps: int) -> float:
    """Total unwrapped eccentric-angle advance over `steps` tangent steps from t0."""
    p = point_at(e, t0)
    t = t0
    total = 0.0
    for _ in range(steps):
        p = next_tangent_vertex(e, c, p)
        t_next = e.param(p)
        total += wrap_angle(t_next - t)
        t = t_next
    return total


def rotation_number(e: Ellipse, lam: float, steps: int = 256) -> float:
    """Long-run average advance per tangent step, as a fraction of a full turn."""
    if steps < 64:
        raise ValueError(f"rotation_number needs >= 64 steps, got {steps}")
    c = make_caustic(e, lam)
    return _advance(e, c, 0.0, steps) / (TWO_PI * steps)

# --- Orbit finding ---

def _validate_period(n: int, winding: int, allow_self_intersecting: bool) -> None:
    if n < 3:
        raise InvalidN(f"Periodic orbits need n >= 3, got {n}")
    if winding < 1:
        raise InvalidWinding(f"Winding must be >= 1, got {winding}")
    if winding != 1 and not allow_self_intersecting:
        raise InvalidWinding("Winding > 1 gives self-intersecting orbits; enable experimental mode")
    if math.gcd(n, winding) != 1:
        raise InvalidWinding(f"gcd(n={n}, winding={winding}) must be 1")
    if 2 * winding >= n:
        raise InvalidWinding(f"No elliptic caustic closes with rotation number {winding}/{n}")


def find_caustic(e: Ellipse, n: int, winding: int = 1, allow_self_intersecting: bool = False) -> ConfocalCaustic:
    """
    Confocal caustic whose n-step tangent map closes after `winding` turns.

    The closure defect (total advance from t=0 minus 2*pi*winding) grows with lambda,
    so the root is bracketed on the clamped interval and bisected.
    """
    _validate_period(n, winding, allow_self_intersecting)
    b2 = e.b * e.b
    target = TWO_PI * winding

    def defect(lam: float) -> float:
        return _advance(e, make_caustic(e, lam), 0.0, n) - target

    lo, hi = LAMBDA_MARGIN * b2, (1.0 - LAMBDA_MARGIN) * b2
    if defect(lo) * defect(hi) > 0:
        lo, hi = _scan_bracket(defect, lo, hi, n, winding)

    lam, info = bisect(defect, lo, hi, xtol=LAMBDA_XTOL * b2, maxiter=MAX_BISECTIONS,
                       full_output=True, disp=False)
    if not info.converged:
        raise NoConvergence(f"Caustic search for n={n} did not converge in {MAX_BISECTIONS} bisections")
    c = make_caustic(e, lam)
    logger.info(f"Caustic for n={n}, winding={winding}, a/b={e.aspect_ratio:.6g}: "
                f"lambda={lam:.17g} after {info.iterations} bisections")
    return c


def _scan_bracket(defect, lo: float, hi: float, n: int, winding: int) -> Tuple[float, float]:
    """Fallback when the endpoint signs agree: scan for a sign change."""
    logger.warning(f"Closure defect not monotone on the clamped bracket for n={n}, "
                   f"winding={winding}; scanning {SCAN_POINTS} points")
    grid = np.linspace(lo, hi, SCAN_POINTS)
    vals = [defect(float(x)) for x in grid]
    for x0, x1, f0, f1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if f0 * f1 <= 0:
            return float(x0), float(x1)
    raise NoConvergence(f"No sign change of the closure defect for n={n}, winding={winding}")


def orbit_at(e: Ellipse, c: ConfocalCaustic, t0: float, n: int, winding: int = 1) -> Orbit:
    p = point_at(e, t0)
    verts = [p]
    for _ in range(n):
        p = next_tangent_vertex(e, c, p)
        verts.append(p)
    gap = verts[-1].dist(verts[0])
    if gap >= CLOSURE_TOL * e.a:
        raise ClosureFailure(f"Orbit from t0={t0} misses closure by {gap:.3e} (stale caustic?)")
    return Orbit(vertices=tuple(verts[:-1]), caustic=c, t0=t0, winding=winding)


def perimeter(o: Orbit) -> float:
    return sum(o.vertices[i].dist(o.vertices[(i + 1) % o.n]) for i in range(o.n))


def orbit_gamma(e: Ellipse, o: Orbit) -> List[float]:
    """Joachimsthal's gamma at each vertex, using the incoming chord direction."""
    out = []
    for i in range(o.n):
        v_in = (o.vertices[i] - o.vertices[i - 1]).unit()
        out.append(joachimsthal(e, o.vertices[i], v_in))
    return out


def gamma_and_perimeter(e: Ellipse, o: Orbit) -> GammaL:
    gammas = orbit_gamma(e, o)
    return GammaL(gamma=sum(gammas) / len(gammas), perimeter=perimeter(o))


def family(e: Ellipse, n: int, m: int, winding: int = 1, allow_self_intersecting: bool = False) -> OrbitFamily:
    """Orbits at t0 = 2*pi*k/m sharing one caustic; (gamma, L) averaged over members."""
    if m < 8:
        raise ValueError(f"A family needs at least 8 samples, got {m}")
    c = find_caustic(e, n, winding, allow_self_intersecting)
    orbits = tuple(orbit_at(e, c, TWO_PI * k / m, n, winding) for k in range(m))
    pairs = [gamma_and_perimeter(e, o) for o in orbits]
    gl = GammaL(
        gamma=sum(p.gamma for p in pairs) / m,
        perimeter=sum(p.perimeter for p in pairs) / m,
    )
    logger.info(f"Built family n={n}, m={m}, a/b={e.aspect_ratio:.6g}: gamma={gl.gamma:.12g}, L={gl.perimeter:.12g}")
    return OrbitFamily(ellipse=e, n=n, caustic=c, samples=orbits, gamma_l=gl, winding=winding)
