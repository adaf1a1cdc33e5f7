"""Numerical laboratory for confocal elliptic billiards: orbit families, triangle centers, loci and invariants."""

__version__ = "0.1.0"
