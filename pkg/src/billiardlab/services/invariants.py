# src/billiardlab/services/invariants.py
from __future__ import annotations
import asyncio
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from billiardlab.centers.derived import derived_triangle
from billiardlab.centers.kimberling import kimberling
from billiardlab.centers.triangle import metrics
from billiardlab.geometry.base import BilliardLabError
from billiardlab.geometry.conics import diameter
from billiardlab.geometry.primitives import gradient, interior_angles, polygon_area
from billiardlab.models import (
    CheckMode, DerivedKind, Ellipse, InvariantCheck, OrbitFamily, Point2, SweepConfig, Triangle,
)
from billiardlab.services import dynamics
from billiardlab.services.loci import SKIPPABLE
from billiardlab.services.polygons import (
    circle_locus_point, circumbilliard, cosine_circle_q_points, generalized_extouchpoints,
    generalized_mittenpunkt, tangential_polygon,
)
from billiardlab.utils.config import resolve_tolerance

logger = logging.getLogger(__name__)

MITTENPUNKT_RESIDUAL = 1e-8   # concurrence residual, relative to a
STATIONARY_DIAMETER = 1e-8    # relative to a
STATIONARY_OFFSET = 1e-9      # relative to a
MONGE_TOL = 1e-9

# Common errors
class CheckError(BilliardLabError): ...
class WrongN(CheckError): ...
class SelfIntersecting(CheckError): ...


def _cfg(fam: OrbitFamily, cfg: Optional[SweepConfig]) -> SweepConfig:
    return cfg or SweepConfig(n=fam.n, a_over_b=(fam.ellipse.aspect_ratio,), b=fam.ellipse.b,
                              winding=fam.winding, allow_self_intersecting=fam.winding != 1)


def _require_n(fam: OrbitFamily, n: int, name: str) -> None:
    if fam.n != n:
        raise WrongN(f"{name} applies to n={n}, family has n={fam.n}")


def _simple_or_record(fam: OrbitFamily, cfg: SweepConfig, name: str) -> bool:
    """True when the family is non-self-intersecting; raises unless experimental mode is on."""
    if fam.winding == 1:
        return True
    if not cfg.allow_self_intersecting:
        raise SelfIntersecting(f"{name} needs a non-self-intersecting family (winding={fam.winding})")
    return False


def summarize(
    name: str,
    fam_n: int,
    aspect_ratio: float,
    values: Sequence[float],
    mode: CheckMode,
    tolerance: float,
    provenance: str,
    expected: Optional[float] = None,
    skipped: int = 0,
    asserted: bool = True,
    note: str = "",
) -> InvariantCheck:
    """Reduce per-sample values to an InvariantCheck under the given mode."""
    vals = tuple(float(v) for v in values)
    if not vals:
        logger.warning(f"{name}: no valid samples ({skipped} skipped), recording without assertion")
        return InvariantCheck(
            name=name, n=fam_n, aspect_ratio=aspect_ratio, samples=0, values=(), mean=0.0,
            max_abs_dev=0.0, rel_spread=0.0, expected=expected, provenance=provenance, mode=mode,
            tolerance=tolerance, passed=False, asserted=False, skipped=skipped,
            note=note or "all samples skipped",
        )
    mean = math.fsum(vals) / len(vals)
    max_abs_dev = max(abs(v - mean) for v in vals)
    rel_spread = (max(vals) - min(vals)) / max(1.0, abs(mean))

    if mode == "constant":
        passed = rel_spread < tolerance and (
            expected is None or abs(mean - expected) < tolerance * max(1.0, abs(expected))
        )
    elif mode == "varying":
        passed = rel_spread > tolerance
    elif mode == "bound":
        passed = max(abs(v) for v in vals) < tolerance
    else:
        passed, asserted = True, False
    return InvariantCheck(
        name=name, n=fam_n, aspect_ratio=aspect_ratio, samples=len(vals), values=vals, mean=mean,
        max_abs_dev=max_abs_dev, rel_spread=rel_spread, expected=expected, provenance=provenance,
        mode=mode, tolerance=tolerance, passed=passed, asserted=asserted, skipped=skipped, note=note,
    )


def _per_orbit(fam: OrbitFamily, fn: Callable) -> Tuple[List[float], int]:
    """Apply fn to each member (fn may return a float or a list); count degenerate members."""
    values: List[float] = []
    skipped = 0
    for o in fam.samples:
        try:
            out = fn(o)
        except SKIPPABLE as e:
            skipped += 1
            logger.debug(f"Skipping member t0={o.t0:.6f}: {type(e).__name__}: {e}")
            continue
        if isinstance(out, (list, tuple)):
            values.extend(out)
        else:
            values.append(out)
    return values, skipped

# ------------------- Conserved quantities of the family -------------------

def check_gamma_constancy(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    cfg = _cfg(fam, cfg)
    e = fam.ellipse
    values, skipped = _per_orbit(fam, lambda o: dynamics.orbit_gamma(e, o))
    return summarize(
        "gamma_constancy", fam.n, e.aspect_ratio, values, "constant",
        resolve_tolerance(cfg.tolerances, "gamma_constancy", "constant"),
        "Joachimsthal invariant at every vertex of every family member", skipped=skipped,
    )


def check_perimeter_constancy(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    cfg = _cfg(fam, cfg)
    values, skipped = _per_orbit(fam, dynamics.perimeter)
    return summarize(
        "perimeter_constancy", fam.n, fam.ellipse.aspect_ratio, values, "constant",
        resolve_tolerance(cfg.tolerances, "perimeter_constancy", "constant"),
        "perimeter of every family member", skipped=skipped,
    )


def check_r_over_R(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """r/R per orbit triangle, constant and equal to gamma*L - 4."""
    _require_n(fam, 3, "r_over_R")
    cfg = _cfg(fam, cfg)
    values, skipped = _per_orbit(fam, lambda o: metrics(Triangle.from_orbit(o)).r_over_R)
    return summarize(
        "r_over_R", 3, fam.ellipse.aspect_ratio, values, "constant",
        resolve_tolerance(cfg.tolerances, "r_over_R", "constant"),
        "gamma*L - 4 from the family's (gamma, L)",
        expected=fam.gamma_l.product - 4.0, skipped=skipped,
    )


def check_cosine_sum(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """Sum of orbit-polygon cosines, constant and equal to gamma*L - N."""
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "cosine_sum")
    values, skipped = _per_orbit(fam, lambda o: math.fsum(math.cos(a) for a in interior_angles(o.vertices)))
    return summarize(
        "cosine_sum", fam.n, fam.ellipse.aspect_ratio, values, "constant" if simple else "record",
        resolve_tolerance(cfg.tolerances, "cosine_sum", "constant"),
        "gamma*L - N from the family's (gamma, L)",
        expected=fam.gamma_l.product - fam.n if simple else None, skipped=skipped,
        asserted=simple, note="" if simple else "self-intersecting family: recorded only",
    )


def _tangential_cosine_product(e: Ellipse, o) -> float:
    tp = tangential_polygon(e, o)
    return math.prod(math.cos(a) for a in interior_angles(tp.vertices))


def check_excentral_cosine_product(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "excentral_cosine_product")
    e = fam.ellipse
    values, skipped = _per_orbit(fam, lambda o: _tangential_cosine_product(e, o))
    expected, provenance = None, "constancy over the family"
    if fam.n == 3:
        expected, provenance = (fam.gamma_l.product - 4.0) / 4.0, "r/(4R) = (gamma*L - 4)/4"
    elif fam.n == 4:
        expected, provenance = 0.0, "tangential polygon is a rectangle"
    return summarize(
        "excentral_cosine_product", fam.n, e.aspect_ratio, values, "constant" if simple else "record",
        resolve_tolerance(cfg.tolerances, "excentral_cosine_product", "constant"),
        provenance, expected=expected if simple else None, skipped=skipped, asserted=simple,
    )


def _area_ratio(e: Ellipse, o) -> float:
    tp = tangential_polygon(e, o)
    return abs(polygon_area(tp.vertices)) / abs(polygon_area(o.vertices))


def check_area_ratio(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """Tangential-to-orbit area ratio: conserved for odd N, not conserved for even N."""
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "area_ratio")
    e = fam.ellipse
    values, skipped = _per_orbit(fam, lambda o: _area_ratio(e, o))
    note = ""
    if not simple:
        mode: CheckMode = "record"
        note = "self-intersecting family: recorded only"
    elif fam.n % 2 == 1:
        mode = "constant"
    elif e.a == e.b:
        mode, note = "record", "circle: every member is congruent, non-conservation is not observable"
    else:
        mode = "varying"
    expected = None
    if fam.n == 3 and simple:
        expected = 2.0 / (fam.gamma_l.product - 4.0)
    kind = "varying" if mode == "varying" else "constant"
    return summarize(
        "area_ratio", fam.n, e.aspect_ratio, values, mode,
        resolve_tolerance(cfg.tolerances, "area_ratio", kind),
        "2R/r = 2/(gamma*L - 4)" if expected is not None else f"{mode} over the family",
        expected=expected, skipped=skipped, note=note,
    )


def check_perimeter_formula(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """Relative defect of L against 8*gamma*sum(1/|grad f|^2) per orbit."""
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "perimeter_formula")
    e = fam.ellipse
    gamma = fam.gamma_l.gamma

    def defect(o) -> float:
        L = dynamics.perimeter(o)
        s = math.fsum(1.0 / gradient(e, p).dot(gradient(e, p)) for p in o.vertices)
        return abs(L - 8.0 * gamma * s) / L

    values, skipped = _per_orbit(fam, defect)
    return summarize(
        "perimeter_formula", fam.n, e.aspect_ratio, values, "bound" if simple else "record",
        resolve_tolerance(cfg.tolerances, "perimeter_formula", "constant"),
        "L = 8*gamma*sum 1/|grad f_i|^2", skipped=skipped, asserted=simple,
    )

# ------------------- 3-periodic identities -------------------

LOCUS_TARGETS = ("X11_caustic", "X100_billiard", "extouch_caustic", "anticompl_intouch_billiard")


def _locus_defects(fam: OrbitFamily, which: str) -> Callable:
    e = fam.ellipse
    c = fam.caustic
    if which == "X11_caustic":
        return lambda o: abs(c.f(kimberling(Triangle.from_orbit(o), 11)) - 1.0)
    if which == "X100_billiard":
        return lambda o: abs(e.f(kimberling(Triangle.from_orbit(o), 100)) - 1.0)
    if which == "extouch_caustic":
        return lambda o: [abs(c.f(p) - 1.0)
                          for p in derived_triangle(Triangle.from_orbit(o), DerivedKind.EXTOUCH).vertices]
    if which == "anticompl_intouch_billiard":
        def fn(o):
            anti = derived_triangle(Triangle.from_orbit(o), DerivedKind.ANTICOMPLEMENTARY)
            return [abs(e.f(p) - 1.0) for p in derived_triangle(anti, DerivedKind.INTOUCH).vertices]
        return fn
    raise ValueError(f"Unknown locus identity {which!r}; choose from {', '.join(LOCUS_TARGETS)}")


def check_locus_identities(fam: OrbitFamily, which: str, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """Implicit-equation defect of a tracked point against the caustic or the billiard."""
    _require_n(fam, 3, f"locus_{which}")
    cfg = _cfg(fam, cfg)
    name = f"locus_{which}"
    values, skipped = _per_orbit(fam, _locus_defects(fam, which))
    target = "caustic" if which.endswith("caustic") else "billiard"
    return summarize(
        name, 3, fam.ellipse.aspect_ratio, values, "bound",
        resolve_tolerance(cfg.tolerances, name, "locus"),
        f"|f_{target}(p) - 1| over the family", skipped=skipped,
    )


def check_stationary(fam: OrbitFamily, center_index: int, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """
    Distance of a center from the origin across the family. X9 is asserted stationary at the
    origin; any other center has its locus diameter recorded. Overrides: the check name sets
    the diameter bound and "<name>_offset" the bound on the mean's distance from the origin,
    both relative to a.
    """
    _require_n(fam, 3, f"stationary_X{center_index}")
    cfg = _cfg(fam, cfg)
    e = fam.ellipse
    name = f"stationary_X{center_index}"
    diam_tol = cfg.tolerances.get(name, STATIONARY_DIAMETER) * e.a
    offset_tol = cfg.tolerances.get(f"{name}_offset", STATIONARY_OFFSET) * e.a
    pts: List[Point2] = []
    skipped = 0
    for o in fam.samples:
        try:
            pts.append(kimberling(Triangle.from_orbit(o), center_index))
        except SKIPPABLE:
            skipped += 1
    if not pts:
        return summarize(name, 3, e.aspect_ratio, [], "record", 0.0, "locus of the center", skipped=skipped)
    diam = diameter(pts)
    mean = Point2(math.fsum(p.x for p in pts) / len(pts), math.fsum(p.y for p in pts) / len(pts))
    note = f"diameter={diam:.6e}, mean=({mean.x:.6e}, {mean.y:.6e})"
    norms = [p.norm() for p in pts]
    if center_index != 9:
        return summarize(name, 3, e.aspect_ratio, norms, "record", diam_tol,
                         "recorded only", skipped=skipped, note=note)
    chk = summarize(name, 3, e.aspect_ratio, norms, "bound", diam_tol,
                    "mittenpunkt stays at the billiard center", skipped=skipped, note=note)
    return _with_pass(chk, diam < diam_tol and mean.norm() < offset_tol)


def _with_pass(chk: InvariantCheck, passed: bool) -> InvariantCheck:
    return replace(chk, passed=passed)


def check_circumbilliard(t: Triangle, tolerance: Optional[float] = None) -> InvariantCheck:
    """Reflection defects of a triangle inside its X9-centered circumellipse."""
    cb = circumbilliard(t)
    major, minor = cb.semi_axes
    return summarize(
        "circumbilliard", 3, major / minor, cb.reflection_defects, "bound",
        tolerance if tolerance is not None else 1e-8,
        "equal chord angles with the circumellipse normal",
        note=f"center=({cb.center.x:.6e}, {cb.center.y:.6e}), semi_axes=({major:.12g}, {minor:.12g})",
    )


def check_family_circumbilliard(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """Reflection defects of each orbit inside its own X9-centered circumellipse."""
    _require_n(fam, 3, "circumbilliard")
    cfg = _cfg(fam, cfg)
    values, skipped = _per_orbit(fam, lambda o: list(circumbilliard(Triangle.from_orbit(o)).reflection_defects))
    return summarize(
        "circumbilliard", 3, fam.ellipse.aspect_ratio, values, "bound",
        resolve_tolerance(cfg.tolerances, "circumbilliard", "constant"),
        "equal chord angles with the circumellipse normal", skipped=skipped,
    )


def check_circumbilliard_axes(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """Semi-axis defect of each orbit's circumbilliard against the billiard, relative to a."""
    _require_n(fam, 3, "circumbilliard_axes")
    cfg = _cfg(fam, cfg)
    e = fam.ellipse

    def axis_defect(o) -> float:
        major, minor = circumbilliard(Triangle.from_orbit(o)).semi_axes
        return max(abs(major - e.a), abs(minor - e.b)) / e.a

    values, skipped = _per_orbit(fam, axis_defect)
    return summarize(
        "circumbilliard_axes", 3, e.aspect_ratio, values, "bound",
        resolve_tolerance(cfg.tolerances, "circumbilliard_axes", "locus"),
        "circumellipse at X9 recovers the billiard (a, b)", skipped=skipped,
    )


def check_cosine_identity_agreement(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """1 + r/R against gamma*L - 3, both evaluated on the same orbit."""
    _require_n(fam, 3, "cosine_identity_agreement")
    cfg = _cfg(fam, cfg)
    e = fam.ellipse

    def gap(o) -> float:
        gl = dynamics.gamma_and_perimeter(e, o)
        return (1.0 + metrics(Triangle.from_orbit(o)).r_over_R) - (gl.product - 3.0)

    values, skipped = _per_orbit(fam, gap)
    return summarize(
        "cosine_identity_agreement", 3, e.aspect_ratio, values, "bound",
        resolve_tolerance(cfg.tolerances, "cosine_identity_agreement", "identity"),
        "sum of cosines two ways: 1 + r/R and gamma*L - 3", skipped=skipped,
    )


def check_cosine_circle(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    _require_n(fam, 3, "cosine_circle")
    cfg = _cfg(fam, cfg)
    e = fam.ellipse
    extended = 0

    def norms(o):
        nonlocal extended
        q = cosine_circle_q_points(e, o)
        extended += int(q.extended)
        return [q.q1.norm(), q.q2.norm()]

    values, skipped = _per_orbit(fam, norms)
    return summarize(
        "cosine_circle", 3, e.aspect_ratio, values, "constant",
        resolve_tolerance(cfg.tolerances, "cosine_circle", "locus"),
        "radius 1/gamma", expected=1.0 / fam.gamma_l.gamma, skipped=skipped,
        note=f"{extended} members hit an edge extension" if extended else "",
    )

# ------------------- Tangential-polygon constructions, any N -------------------

def check_generalized_mittenpunkt(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "generalized_mittenpunkt")
    e = fam.ellipse
    residuals: List[float] = []

    def offset(o) -> float:
        cp = generalized_mittenpunkt(o, tangential_polygon(e, o))
        residuals.append(cp.residual)
        return cp.point.norm() / e.a

    values, skipped = _per_orbit(fam, offset)
    worst = max(residuals, default=0.0) / e.a
    chk = summarize(
        "generalized_mittenpunkt", fam.n, e.aspect_ratio, values, "bound" if simple else "record",
        cfg.tolerances.get("generalized_mittenpunkt", STATIONARY_OFFSET),
        "concurrence at the billiard center", skipped=skipped, asserted=simple,
        note=f"max residual/a={worst:.3e}",
    )
    if simple and chk.asserted:
        chk = _with_pass(chk, chk.passed and worst < MITTENPUNKT_RESIDUAL)
    return chk


def check_generalized_extouch(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "generalized_extouch")
    e, c = fam.ellipse, fam.caustic
    values, skipped = _per_orbit(
        fam, lambda o: [abs(c.f(p) - 1.0) for p in generalized_extouchpoints(o, tangential_polygon(e, o))]
    )
    return summarize(
        "generalized_extouch", fam.n, e.aspect_ratio, values, "bound" if simple else "record",
        resolve_tolerance(cfg.tolerances, "generalized_extouch", "locus"),
        "|f_caustic(foot) - 1| over the family", skipped=skipped, asserted=simple,
    )


def check_circle_locus(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    cfg = _cfg(fam, cfg)
    simple = _simple_or_record(fam, cfg, "circle_locus")
    e = fam.ellipse

    def norms(o):
        tp = tangential_polygon(e, o)
        return [circle_locus_point(o, tp, i).norm() for i in range(o.n)]

    values, skipped = _per_orbit(fam, norms)
    return summarize(
        "circle_locus", fam.n, e.aspect_ratio, values, "constant" if simple else "record",
        resolve_tolerance(cfg.tolerances, "circle_locus", "locus"),
        "radius 1/gamma", expected=1.0 / fam.gamma_l.gamma if simple else None,
        skipped=skipped, asserted=simple,
    )


def check_monge_orthoptic(fam: OrbitFamily, cfg: Optional[SweepConfig] = None) -> InvariantCheck:
    """N=4 tangential polygons: vertices on the orthoptic circle and right angles throughout."""
    _require_n(fam, 4, "monge_orthoptic")
    cfg = _cfg(fam, cfg)
    e = fam.ellipse
    radius = math.hypot(e.a, e.b)

    def defects(o):
        tp = tangential_polygon(e, o)
        out = [abs(p.norm() - radius) / e.a for p in tp.vertices]
        out += [abs(a - 0.5 * math.pi) for a in interior_angles(tp.vertices)]
        return out

    values, skipped = _per_orbit(fam, defects)
    return summarize(
        "monge_orthoptic", 4, e.aspect_ratio, values, "bound",
        cfg.tolerances.get("monge_orthoptic", MONGE_TOL),
        "radius sqrt(a^2 + b^2), right angles", skipped=skipped,
    )

# ------------------- Registry and suite runner -------------------

CheckFn = Callable[[OrbitFamily, SweepConfig], InvariantCheck]


@dataclass(frozen=True)
class RegisteredCheck:
    name: str
    fn: CheckFn
    applies: Callable[[int], bool]
    prerequisite: bool = False


_CHECK_REGISTRY: Dict[str, RegisteredCheck] = {}


def register_check(name: str, applies: Callable[[int], bool] = lambda n: True, prerequisite: bool = False):
    """Decorator registering a family check under a name, with an applicability test on n."""
    def deco(fn: CheckFn) -> CheckFn:
        _CHECK_REGISTRY[name] = RegisteredCheck(name, fn, applies, prerequisite)
        return fn
    return deco


def available_checks() -> List[str]:
    return sorted(_CHECK_REGISTRY)


def applicable_checks(n: int) -> List[RegisteredCheck]:
    return [c for _, c in sorted(_CHECK_REGISTRY.items()) if c.applies(n)]


def _only(k: int) -> Callable[[int], bool]:
    return lambda n: n == k


register_check("gamma_constancy", prerequisite=True)(check_gamma_constancy)
register_check("perimeter_constancy", prerequisite=True)(check_perimeter_constancy)
register_check("r_over_R", _only(3))(check_r_over_R)
register_check("cosine_sum")(check_cosine_sum)
register_check("excentral_cosine_product")(check_excentral_cosine_product)
register_check("area_ratio")(check_area_ratio)
register_check("perimeter_formula")(check_perimeter_formula)
register_check("cosine_identity_agreement", _only(3))(check_cosine_identity_agreement)
register_check("circumbilliard", _only(3))(check_family_circumbilliard)
register_check("circumbilliard_axes", _only(3))(check_circumbilliard_axes)
register_check("cosine_circle", _only(3))(check_cosine_circle)
register_check("generalized_mittenpunkt")(check_generalized_mittenpunkt)
register_check("generalized_extouch")(check_generalized_extouch)
register_check("circle_locus")(check_circle_locus)
register_check("monge_orthoptic", _only(4))(check_monge_orthoptic)
register_check("stationary_X9", _only(3))(lambda fam, cfg: check_stationary(fam, 9, cfg))
for _which in LOCUS_TARGETS:
    register_check(f"locus_{_which}", _only(3))(
        lambda fam, cfg, _w=_which: check_locus_identities(fam, _w, cfg)
    )


async def run_checks(fam: OrbitFamily, cfg: SweepConfig) -> List[InvariantCheck]:
    """Prerequisites first, then the remaining applicable checks concurrently in worker threads."""
    checks = applicable_checks(fam.n)
    first = [c.fn(fam, cfg) for c in checks if c.prerequisite]
    rest = await asyncio.gather(*(asyncio.to_thread(c.fn, fam, cfg) for c in checks if not c.prerequisite))
    return sorted(first + list(rest), key=lambda c: c.name)


async def run_suite(e: Ellipse, cfg: SweepConfig) -> List[InvariantCheck]:
    """Build the family once and run every applicable check against it."""
    logger.info(f"Invariant suite: n={cfg.n}, a/b={e.aspect_ratio:.6g}, samples={cfg.samples}")
    fam = await asyncio.to_thread(
        dynamics.family, e, cfg.n, cfg.samples, cfg.winding, cfg.allow_self_intersecting
    )
    reports = await run_checks(fam, cfg)
    failed = [r.name for r in reports if r.asserted and not r.passed]
    logger.info(f"Invariant suite done: {len(reports)} checks, {len(failed)} failed {failed or ''}")
    return reports


async def run_sweep(cfg: SweepConfig) -> List[InvariantCheck]:
    """Every aspect ratio of the sweep, reports ordered by (aspect ratio, name)."""
    ellipses = [Ellipse(r * cfg.b, cfg.b) for r in cfg.a_over_b]
    results = await asyncio.gather(*(run_suite(e, cfg) for e in ellipses))
    return [chk for reports in results for chk in reports]
