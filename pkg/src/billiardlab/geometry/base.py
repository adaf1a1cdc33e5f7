# src/billiardlab/geometry/base.py
from __future__ import annotations

# Tolerances shared by the primitives (absolute unless noted)
ZERO_NORMAL_TOL = 1e-14
BOUNDARY_TOL = 1e-10
OUTSIDE_TOL = 1e-12
PARALLEL_TOL = 1e-12
TANGENCY_TOL = 1e-12      # relative to the quadratic's coefficient scale
DEGENERATE_DIAMETER = 1e-12

# Common errors
class BilliardLabError(Exception): ...
class GeometryError(BilliardLabError): ...
class NonFiniteValue(GeometryError): ...
class InvalidEllipse(GeometryError): ...
class ZeroNormal(GeometryError): ...
class NotOnBoundary(GeometryError): ...
class InsideEllipse(GeometryError): ...
class ParallelLines(GeometryError): ...
class DegenerateInput(GeometryError): ...
