"""Exact planar circle-diagram calculus package."""

__version__ = "1.0.0"
