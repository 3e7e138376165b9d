"""Finite projective planes of order 9, their ovals, and Poncelet polygons."""

__version__ = "0.1.0"
