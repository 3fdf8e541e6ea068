"""Exact verification of zero-product characterizations of derivations on
finite-dimensional algebras."""

__version__ = "0.1.0"
