# src/billiardlab/centers/base.py
from __future__ import annotations
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, Type

from billiardlab.models import Point2, Triangle, TriangleMetrics, TrilinearTriple
from billiardlab.centers.triangle import (
    InfinitePoint, UnsupportedIndex, metrics,
)

WEIGHT_SUM_TOL = 1e-12   # relative to the sum of absolute weights

TrilinearFn = Callable[[TriangleMetrics], TrilinearTriple]


def center_from_trilinear(t: Triangle, tri: TrilinearTriple, m: TriangleMetrics | None = None) -> Point2:
    """
    Trilinears -> barycentrics (alpha s1, beta s2, gamma s3) -> Cartesian.
    """
    m = m or metrics(t)
    w1 = tri.alpha * m.sides[0]
    w2 = tri.beta * m.sides[1]
    w3 = tri.gamma_c * m.sides[2]
    total = w1 + w2 + w3
    if abs(total) <= WEIGHT_SUM_TOL * (abs(w1) + abs(w2) + abs(w3)):
        raise InfinitePoint(f"Barycentric weights sum to ~0 for trilinears {tri.as_tuple()}")
    return Point2(
        (w1 * t.v1.x + w2 * t.v2.x + w3 * t.v3.x) / total,
        (w1 * t.v1.y + w2 * t.v2.y + w3 * t.v3.y) / total,
    )


class TriangleCenter(ABC):
    """
    A triangle center: a point located from the triangle alone.
    Concrete centers register themselves by Kimberling index.
    """
    index: int   # Kimberling number, e.g. 1 for the incenter
    name: str

    @abstractmethod
    def locate(self, t: Triangle) -> Point2:
        raise NotImplementedError


class TrilinearCenter(TriangleCenter):
    """A center given by a trilinear function of the side lengths and angles."""

    @abstractmethod
    def trilinears(self, m: TriangleMetrics) -> TrilinearTriple:
        raise NotImplementedError

    def locate(self, t: Triangle) -> Point2:
        m = metrics(t)
        return center_from_trilinear(t, self.trilinears(m), m)


class GenericCenter(TrilinearCenter):
    """Wraps an arbitrary trilinear function, for centers outside the registered subset."""

    def __init__(self, fn: TrilinearFn, name: str = "custom", index: int = 0):
        self._fn = fn
        self.name = name
        self.index = index

    def trilinears(self, m: TriangleMetrics) -> TrilinearTriple:
        return self._fn(m)

# -------- Registry for lookups by Kimberling index (used by loci/CLI) --------

_CENTER_REGISTRY: Dict[int, Type[TriangleCenter]] = {}

def register_center(cls: Type[TriangleCenter]) -> Type[TriangleCenter]:
    """Decorator to register centers by their .index."""
    if not getattr(cls, "index", None):
        raise ValueError("Center class must define a positive 'index'")
    _CENTER_REGISTRY[cls.index] = cls
    return cls

def available_centers() -> List[int]:
    return sorted(_CENTER_REGISTRY.keys())

def make_center(index: int) -> TriangleCenter:
    cls = _CENTER_REGISTRY.get(index)
    if not cls:
        known = ", ".join(f"X{i}" for i in available_centers())
        raise UnsupportedIndex(f"Unsupported center X{index}. Known: {known}")
    return cls()
