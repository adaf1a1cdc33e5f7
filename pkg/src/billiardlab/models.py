# src/billiardlab/models.py
from __future__ import annotations
import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

from billiardlab.geometry.base import NonFiniteValue, InvalidEllipse

CheckMode = Literal["constant", "varying", "bound", "record"]
CausticKind = Literal["elliptic", "hyperbolic"]

# ----- Planar primitives -----

@dataclass(frozen=True)
class Point2:
    x: float   # length units
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise NonFiniteValue(f"Non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Point2":
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "Point2":
        return Point2(self.x / k, self.y / k)

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        """z-component of the 2D cross product."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Point2":
        return self / self.norm()

    def perp(self) -> "Point2":
        """Counterclockwise quarter turn."""
        return Point2(-self.y, self.x)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned, origin-centered: (x/a)^2 + (y/b)^2 = 1."""
    a: float   # semi-major
    b: float   # semi-minor

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidEllipse(f"Non-finite semi-axes ({self.a}, {self.b})")
        if not (self.a >= self.b > 0):
            raise InvalidEllipse(f"Semi-axes must satisfy a >= b > 0, got a={self.a}, b={self.b}")

    def f(self, p: Point2) -> float:
        return (p.x / self.a) ** 2 + (p.y / self.b) ** 2

    def param(self, p: Point2) -> float:
        """Eccentric angle of p, in (-pi, pi]."""
        return math.atan2(p.y / self.b, p.x / self.a)

    @property
    def aspect_ratio(self) -> float:
        return self.a / self.b

    @property
    def focal_sq(self) -> float:
        return self.a * self.a - self.b * self.b


@dataclass(frozen=True)
class Line2:
    p: Point2   # anchor
    d: Point2   # unit direction

    def __post_init__(self):
        if abs(self.d.norm() - 1.0) > 1e-12:
            raise ValueError(f"Line direction must be unit length, got |d|={self.d.norm()}")

    @staticmethod
    def make(p: Point2, d: Point2) -> "Line2":
        """Normalizes d; raises ValueError for a zero direction."""
        n = d.norm()
        if n == 0.0:
            raise ValueError("Line direction must be nonzero")
        return Line2(p, d / n)

    @staticmethod
    def through(p: Point2, q: Point2) -> "Line2":
        return Line2.make(p, q - p)

    def at(self, s: float) -> Point2:
        return self.p + self.d * s

    def normal(self) -> Point2:
        return self.d.perp()


@dataclass(frozen=True)
class ConicCoeffs:
    """Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0, unit coefficient norm."""
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    def as_tuple(self) -> Tuple[float, float, float, float, float, float]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def discriminant(self) -> float:
        return self.B * self.B - 4.0 * self.A * self.C

    def evaluate(self, p: Point2) -> float:
        x, y = p.x, p.y
        return self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F


class LocusTag(Enum):
    STATIONARY_POINT = "StationaryPoint"
    CIRCLE = "Circle"
    ELLIPSE = "Ellipse"
    NON_CONIC = "NonConic"


@dataclass(frozen=True)
class ConicClass:
    tag: LocusTag
    metric: float                          # fit residual (RMS) or diameter for stationary points
    coeffs: Optional[ConicCoeffs] = None


# ----- Billiard dynamics -----

@dataclass(frozen=True)
class BilliardState:
    p: Point2   # bounce point on the boundary
    v: Point2   # outgoing unit direction


@dataclass(frozen=True)
class ConfocalCaustic:
    lam: float   # confocal parameter, 0 < lam < b^2
    a_c: float
    b_c: float

    @property
    def ellipse(self) -> Ellipse:
        return Ellipse(self.a_c, self.b_c)

    def f(self, p: Point2) -> float:
        return (p.x / self.a_c) ** 2 + (p.y / self.b_c) ** 2


@dataclass(frozen=True)
class Orbit:
    vertices: Tuple[Point2, ...]   # traversal order
    caustic: ConfocalCaustic
    t0: float = 0.0
    winding: int = 1

    @property
    def n(self) -> int:
        return len(self.vertices)

    def side(self, i: int) -> Tuple[Point2, Point2]:
        """Chord from vertex i to vertex i+1 (cyclic)."""
        return self.vertices[i % self.n], self.vertices[(i + 1) % self.n]


@dataclass(frozen=True)
class GammaL:
    gamma: float       # Joachimsthal invariant (1/length)
    perimeter: float   # length

    @property
    def product(self) -> float:
        return self.gamma * self.perimeter


@dataclass(frozen=True)
class OrbitFamily:
    ellipse: Ellipse
    n: int
    caustic: ConfocalCaustic
    samples: Tuple[Orbit, ...]   # t0 = 2*pi*k/m
    gamma_l: GammaL
    winding: int = 1

    @property
    def m(self) -> int:
        return len(self.samples)

    @property
    def t0s(self) -> List[float]:
        return [o.t0 for o in self.samples]


# ----- Triangles -----

@dataclass(frozen=True)
class Triangle:
    v1: Point2
    v2: Point2
    v3: Point2

    @staticmethod
    def from_orbit(o: Orbit) -> "Triangle":
        if o.n != 3:
            raise ValueError(f"Orbit has {o.n} vertices, a triangle needs 3")
        return Triangle(*o.vertices)

    @property
    def vertices(self) -> Tuple[Point2, Point2, Point2]:
        return (self.v1, self.v2, self.v3)

    @property
    def scale(self) -> float:
        return max(self.v2.dist(self.v3), self.v3.dist(self.v1), self.v1.dist(self.v2))


@dataclass(frozen=True)
class TriangleMetrics:
    sides: Tuple[float, float, float]    # s_i opposite v_i
    angles: Tuple[float, float, float]   # radians, theta_i at v_i
    area: float
    r: float                             # inradius
    R: float                             # circumradius
    r9: float                            # nine-point radius
    s: float                             # semiperimeter

    @property
    def r_over_R(self) -> float:
        return self.r / self.R


@dataclass(frozen=True)
class TrilinearTriple:
    alpha: float
    beta: float
    gamma_c: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma_c)


class DerivedKind(Enum):
    EXCENTRAL = "excentral"
    MEDIAL = "medial"
    ORTHIC = "orthic"
    INTOUCH = "intouch"
    EXTOUCH = "extouch"
    FEUERBACH = "feuerbach"
    ANTICOMPLEMENTARY = "anticomplementary"


# ----- Polygon constructions -----

@dataclass(frozen=True)
class TangentialPolygon:
    vertices: Tuple[Point2, ...]   # vertex k = tangent at P_k meets tangent at P_{k+1}
    source: Orbit

    @property
    def n(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ConcurrencePoint:
    point: Point2
    residual: float   # max distance from point to any of the lines


@dataclass(frozen=True)
class CosineCirclePoints:
    q1: Point2
    q2: Point2
    extended: bool   # True when a hit lies on an edge extension rather than the segment


@dataclass(frozen=True)
class Circumconic:
    center: Point2
    coeffs: Tuple[float, float, float]   # (A, B, C) of A u^2 + B uv + C v^2 = 1, u = x - cx
    semi_axes: Tuple[float, float]       # major, minor
    reflection_defects: Tuple[float, float, float]


# ----- Loci -----

@dataclass(frozen=True)
class LocusSample:
    selector: str
    points: Tuple[Point2, ...]
    t0s: Tuple[float, ...]
    skipped: int = 0


# ----- Invariant reports -----

@dataclass(frozen=True)
class InvariantCheck:
    name: str
    n: int
    aspect_ratio: float
    samples: int
    values: Tuple[float, ...]
    mean: float
    max_abs_dev: float
    rel_spread: float
    expected: Optional[float]
    provenance: str
    mode: CheckMode
    tolerance: float
    passed: bool
    asserted: bool = True
    skipped: int = 0
    note: str = ""

    def to_dict(self, include_values: bool = False) -> Dict[str, Any]:
        """Report record; per-sample values are left out unless asked for."""
        d = asdict(self)
        if include_values:
            d["values"] = list(self.values)
        else:
            d.pop("values")
        return d


@dataclass(frozen=True)
class SweepConfig:
    n: int
    a_over_b: Tuple[float, ...] = (1.5,)
    samples: int = 256
    tolerances: Dict[str, float] = field(default_factory=dict)
    allow_self_intersecting: bool = False
    winding: int = 1
    b: float = 1.0

    def __post_init__(self):
        if self.samples < 32:
            raise ValueError(f"Sweep needs at least 32 samples, got {self.samples}")
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")


@dataclass(frozen=True)
class ExtremalTriangle:
    """Perimeter-maximizing inscribed triangle found by direct search."""
    params: Tuple[float, float, float]       # eccentric angles
    vertices: Tuple[Point2, Point2, Point2]
    perimeter: float
