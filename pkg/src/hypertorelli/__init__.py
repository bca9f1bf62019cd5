"""Hyperelliptic Torelli computations: Burau images, Sp(2g) over Z and F2,
arithmetic complexes and relator verification."""

__version__ = "0.1.0"
