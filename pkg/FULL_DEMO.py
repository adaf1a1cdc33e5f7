#!/usr/bin/env python3
"""
Full Demo: Elliptic Billiard Lab Showcase

Runs each part of the lab in sequence:
- Part 1: Periodic orbits and their caustics
- Part 2: Triangle centers and derived triangles
- Part 3: Locus sweeps and classification
- Part 4: Tangential-polygon constructions
- Part 5: Invariant suite
"""

import asyncio
import logging
import math

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

A, B = 1.5, 1.0


async def demo_part1_orbits():
    """Part 1: Periodic orbits and their caustics"""
    print("\n Part 1: Periodic Orbits")
    print("=" * 50)

    try:
        from billiardlab.models import Ellipse
        from billiardlab.services import dynamics

        e = Ellipse(A, B)
        for n in (3, 4, 5):
            c = dynamics.find_caustic(e, n)
            o = dynamics.orbit_at(e, c, 0.0, n)
            gl = dynamics.gamma_and_perimeter(e, o)
            print(f" N={n}: lambda*={c.lam:.12f}  caustic=({c.a_c:.6f}, {c.b_c:.6f})")
            print(f"   gamma={gl.gamma:.12f}  L={gl.perimeter:.12f}  gamma*L={gl.product:.12f}")
        print(f" Rotation number at lambda=0.5: {dynamics.rotation_number(e, 0.5):.6f}")
        return True

    except Exception as e:
        print(f" Part 1 error: {e}")
        return False


async def demo_part2_centers():
    """Part 2: Triangle centers and derived triangles"""
    print("\n Part 2: Triangle Centers")
    print("=" * 50)

    try:
        from billiardlab.centers.base import available_centers
        from billiardlab.centers.derived import derived_triangle
        from billiardlab.centers.kimberling import kimberling
        from billiardlab.centers.triangle import metrics
        from billiardlab.models import DerivedKind, Point2, Triangle

        t = Triangle(Point2(0, 0), Point2(4, 0), Point2(0, 3))
        m = metrics(t)
        print(f" 3-4-5 triangle: r={m.r:.6f}  R={m.R:.6f}  r/R={m.r_over_R:.6f}")
        for i in available_centers():
            p = kimberling(t, i)
            print(f"   X{i:<4} ({p.x:+.6f}, {p.y:+.6f})")
        ext = derived_triangle(t, DerivedKind.EXTOUCH)
        print(f" Extouch triangle: {[v.as_tuple() for v in ext.vertices]}")
        return True

    except Exception as e:
        print(f" Part 2 error: {e}")
        return False


async def demo_part3_loci():
    """Part 3: Locus sweeps and classification"""
    print("\n Part 3: Locus Classification")
    print("=" * 50)

    try:
        from billiardlab.models import Ellipse
        from billiardlab.services import dynamics
        from billiardlab.services.loci import classify_sample, sweep_locus

        e = Ellipse(A, B)
        fam = dynamics.family(e, 3, 128)
        for sel in ("X1", "X2", "X9", "X6", "intouch-vertices"):
            s = sweep_locus(fam, sel)
            cls = classify_sample(s, e)
            print(f"   {sel:<18} {cls.tag.value:<16} metric={cls.metric:.3e}  skipped={s.skipped}")
        return True

    except Exception as e:
        print(f" Part 3 error: {e}")
        return False


async def demo_part4_polygons():
    """Part 4: Tangential-polygon constructions"""
    print("\n Part 4: Tangential Polygons")
    print("=" * 50)

    try:
        from billiardlab.models import Ellipse
        from billiardlab.services import dynamics
        from billiardlab.services.polygons import (
            circle_locus_point, generalized_mittenpunkt, tangential_polygon,
        )

        e = Ellipse(A, B)
        for n in (4, 5):
            c = dynamics.find_caustic(e, n)
            o = dynamics.orbit_at(e, c, 0.3, n)
            gl = dynamics.gamma_and_perimeter(e, o)
            tp = tangential_polygon(e, o)
            cp = generalized_mittenpunkt(o, tp)
            r = circle_locus_point(o, tp, 0).norm()
            print(f" N={n}: mittenpunkt=({cp.point.x:+.2e}, {cp.point.y:+.2e}) residual={cp.residual:.2e}")
            print(f"   circle locus radius={r:.12f}  1/gamma={1.0 / gl.gamma:.12f}")
        print(f" Orthoptic radius sqrt(a^2+b^2) = {math.hypot(A, B):.12f}")
        return True

    except Exception as e:
        print(f" Part 4 error: {e}")
        return False


async def demo_part5_invariants():
    """Part 5: Invariant suite"""
    print("\n Part 5: Invariant Suite")
    print("=" * 50)

    try:
        from billiardlab.models import Ellipse, SweepConfig
        from billiardlab.services.invariants import run_suite

        for n in (3, 4):
            reports = await run_suite(Ellipse(A, B), SweepConfig(n=n, samples=64))
            print(f" N={n}:")
            for r in reports:
                status = "PASS" if r.passed else ("----" if not r.asserted else "FAIL")
                print(f"   {status} {r.name:<34} mean={r.mean:+.10f} spread={r.rel_spread:.2e}")
        return True

    except Exception as e:
        print(f" Part 5 error: {e}")
        return False


async def main():
    """Run the full demo."""
    print(" Full Demo: Elliptic Billiard Lab")
    print("=" * 70)

    parts = [
        ("Part 1: Periodic Orbits", demo_part1_orbits),
        ("Part 2: Triangle Centers", demo_part2_centers),
        ("Part 3: Locus Classification", demo_part3_loci),
        ("Part 4: Tangential Polygons", demo_part4_polygons),
        ("Part 5: Invariant Suite", demo_part5_invariants),
    ]
    results = [await fn() for _, fn in parts]

    print("\n Demo Summary")
    print("=" * 50)
    for i, ((name, _), result) in enumerate(zip(parts, results), 1):
        print(f"{i}. {name}: {' PASS' if result else ' FAIL'}")
    print(f"\n Overall Results: {sum(results)}/{len(results)} parts passed")


if __name__ == "__main__":
    asyncio.run(main())
