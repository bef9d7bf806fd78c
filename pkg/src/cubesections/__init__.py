"""Exact and certified computations for diagonal sections of the unit cube."""

__version__ = "0.1.0"
