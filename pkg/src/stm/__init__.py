"""Exact computations with Soergel modules, Hecke algebras and mixed Tate numerics."""

__version__ = "0.1.0"
