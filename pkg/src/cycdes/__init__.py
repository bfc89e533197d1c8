"""Cyclic descents on permutations and standard Young tableaux."""

__version__ = "0.1.0"
