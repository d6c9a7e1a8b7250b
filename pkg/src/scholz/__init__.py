"""Desk-scale computational toolkit for unit residue laws, quadratic and cyclic
cubic class field data, addition chains, and discriminant bounds."""

__version__ = "0.1.0"
