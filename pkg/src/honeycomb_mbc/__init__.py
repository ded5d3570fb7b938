"""Matching boundary conditions for out-of-plane honeycomb lattice dynamics."""

__version__ = "0.1.0"
