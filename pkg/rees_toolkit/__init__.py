"""Exact Rees-algebra toolkit for blow-ups of the projective plane at points."""

__version__ = "0.1.0"

__all__ = ["__version__"]
