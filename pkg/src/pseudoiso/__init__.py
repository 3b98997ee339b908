"""Exact integer computations of pseudo-isomorphism invariants of groups and simplicial sets."""

__version__ = "0.1.0"
