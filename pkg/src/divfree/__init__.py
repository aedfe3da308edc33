"""Exact computations with the extended divergence-zero Lie algebra G = D_n x| A_n,
its jet modules and truncated generalized Verma modules."""

__version__ = "0.1.0"
