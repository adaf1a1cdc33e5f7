# src/billiardlab/geometry/conics.py
from __future__ import annotations
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from billiardlab.models import Point2, ConicCoeffs, ConicClass, LocusTag
from billiardlab.geometry.base import DEGENERATE_DIAMETER, DegenerateInput

CONIC_RESIDUAL_TOL = 1e-6       # RMS algebraic residual at unit diameter
STATIONARY_REL_DIAMETER = 1e-8  # relative to the billiard semi-major axis
CIRCLE_REL_TOL = 1e-8
MIN_FIT_POINTS = 6


def _as_array(points: Sequence[Point2]) -> np.ndarray:
    return np.array([(p.x, p.y) for p in points], dtype=float)


def diameter(points: Sequence[Point2]) -> float:
    """Largest pairwise distance of the point set."""
    xy = _as_array(points)
    if len(xy) < 2:
        return 0.0
    return float(pdist(xy).max())


def fit_conic(points: Sequence[Point2]) -> Tuple[ConicCoeffs, float]:
    """
    Algebraic least-squares conic through a point set.

    The cloud is centered and scaled to unit diameter, the smallest right singular vector
    of the design matrix [x^2, xy, y^2, x, y, 1] is taken as the unit-norm solution, and
    the coefficients are mapped back to the original frame. The residual is the RMS
    algebraic distance in the normalized frame.
    """
    if len(points) < MIN_FIT_POINTS:
        raise DegenerateInput(f"Conic fit needs >= {MIN_FIT_POINTS} points, got {len(points)}")
    xy = _as_array(points)
    diam = float(pdist(xy).max())
    if diam < DEGENERATE_DIAMETER:
        raise DegenerateInput(f"Point set collapses to a point (diameter={diam:.3e})")

    center = xy.mean(axis=0)
    q = (xy - center) / diam
    x, y = q[:, 0], q[:, 1]
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    _, _, vt = np.linalg.svd(design, full_matrices=False)
    v = vt[-1]
    residual = float(np.linalg.norm(design @ v) / math.sqrt(len(x)))

    A, B, C, D, E, F = v
    cx, cy = center
    s = diam
    coeffs = np.array([
        A,
        B,
        C,
        -2.0 * A * cx - B * cy + D * s,
        -2.0 * C * cy - B * cx + E * s,
        A * cx * cx + B * cx * cy + C * cy * cy - D * s * cx - E * s * cy + F * s * s,
    ])
    coeffs /= np.linalg.norm(coeffs)
    if coeffs[0] + coeffs[2] < 0:
        coeffs = -coeffs
    return ConicCoeffs(*(float(c) for c in coeffs)), residual


def classify_locus(points: Sequence[Point2], scale: float) -> ConicClass:
    """
    StationaryPoint / Circle / Ellipse / NonConic.

    scale is the billiard semi-major axis; the stationary test runs before any fit.
    """
    if len(points) < MIN_FIT_POINTS:
        raise DegenerateInput(f"Classification needs >= {MIN_FIT_POINTS} points, got {len(points)}")
    diam = diameter(points)
    if diam < STATIONARY_REL_DIAMETER * scale:
        return ConicClass(LocusTag.STATIONARY_POINT, diam)

    coeffs, residual = fit_conic(points)
    if residual >= CONIC_RESIDUAL_TOL:
        return ConicClass(LocusTag.NON_CONIC, residual, coeffs)
    quad = math.sqrt(coeffs.A ** 2 + coeffs.B ** 2 + coeffs.C ** 2)
    if abs(coeffs.A - coeffs.C) + abs(coeffs.B) < CIRCLE_REL_TOL * quad:
        return ConicClass(LocusTag.CIRCLE, residual, coeffs)
    if coeffs.discriminant() < 0:
        return ConicClass(LocusTag.ELLIPSE, residual, coeffs)
    return ConicClass(LocusTag.NON_CONIC, residual, coeffs)
