"""Numerical radius, Crawford number and operator-inequality checks for small complex matrices."""

__version__ = "0.1.0"
