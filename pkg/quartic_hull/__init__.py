"""Quartic-Hull - Klein polyhedra and unit-group fundamental domains of totally real biquadratic Galois fields."""

__version__ = "0.1.0"
