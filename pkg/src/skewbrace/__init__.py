"""Skew braces and brace systems on finite groups, free groups and the integer lattice."""

__version__ = "0.1.0"
