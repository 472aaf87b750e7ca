"""Equivariant Hodge Euler characteristics and combinatorics of genus-1 compactified Jacobians."""

__version__ = "0.1.0"
