"""Exact computations with finite-dimensional Hom-Jordan algebras."""

__version__ = "0.1.0"
