"""Subdivision, products and simple maps: exact combinatorial and geometric checks."""

__version__ = "0.1.0"
