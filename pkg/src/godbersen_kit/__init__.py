"""Convex-geometry toolkit: polytope arithmetic, mixed volumes, and the
inequality checks built on top of them."""

__version__ = "0.1.0"
