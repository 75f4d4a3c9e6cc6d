"""Numerics for a uniformly accelerated detector coupled to a massless scalar field."""

__version__ = "0.1.0"
