"""Exact arithmetic for Witt vectors, Magnus algebras and ramification ideals."""

__version__ = "0.1.0"
