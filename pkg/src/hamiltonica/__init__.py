"""Exact Hamiltonicity, path-factor and toughness tools for small graphs."""

__version__ = "0.1.0"
