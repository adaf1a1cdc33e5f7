# src/billiardlab/services/oracle.py
from __future__ import annotations
import logging

import numpy as np
from scipy.optimize import minimize
from scipy.spatial.distance import cdist

from billiardlab.geometry.primitives import point_at, wrap_angle
from billiardlab.models import Ellipse, ExtremalTriangle

logger = logging.getLogger(__name__)

DEFAULT_GRID = 120


def _points(e: Ellipse, t: np.ndarray) -> np.ndarray:
    return np.column_stack([e.a * np.cos(t), e.b * np.sin(t)])


def _perimeter_and_grad(t: np.ndarray, e: Ellipse):
    p = _points(e, t)
    dp = np.column_stack([-e.a * np.sin(t), e.b * np.cos(t)])
    grad = np.zeros(3)
    total = 0.0
    for i in range(3):
        j = (i + 1) % 3
        d = p[j] - p[i]
        n = np.hypot(d[0], d[1])
        total += n
        u = d / n
        # d|p_j - p_i| / dt_j = u . p'_j ; d/dt_i = -u . p'_i
        grad[j] += u @ dp[j]
        grad[i] -= u @ dp[i]
    return total, grad


def perimeter_extremal_triangle(e: Ellipse, grid: int = DEFAULT_GRID) -> ExtremalTriangle:
    """
    Inscribed triangle of maximal perimeter.

    A grid of `grid` boundary parameters is searched exhaustively (all ordered triples,
    vectorized), then the best seed is polished by BFGS on the negated perimeter with its
    analytic gradient.
    """
    if grid < 3:
        raise ValueError(f"grid must be >= 3, got {grid}")
    t = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    D = cdist(_points(e, t), _points(e, t))
    P = D[:, :, None] + D[None, :, :] + D[:, None, :]
    i, j, k = np.unravel_index(np.argmax(P), P.shape)
    seed = np.array([t[i], t[j], t[k]])
    logger.info(f"Oracle grid {grid}^3 best perimeter {P[i, j, k]:.12g} at {seed.round(6).tolist()}")

    res = minimize(
        lambda x: tuple(-v for v in _perimeter_and_grad(x, e)),
        seed,
        jac=True,
        method="BFGS",
        options={"gtol": 1e-13, "maxiter": 500},
    )
    if not res.success:
        logger.warning(f"Oracle refinement stopped early: {res.message}")
    params = tuple(wrap_angle(float(x)) for x in res.x)
    verts = tuple(point_at(e, x) for x in params)
    return ExtremalTriangle(params=params, vertices=verts, perimeter=float(-res.fun))  # type: ignore[arg-type]
