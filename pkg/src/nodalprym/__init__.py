"""Exact computer algebra for a family of nodal plane curves with cyclic symmetry,
their double covers, quotient curves, and the Prym decompositions they induce."""

__version__ = "0.1.0"
