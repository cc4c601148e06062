"""Exact equivariant L-values, zeta distributions and Iwasawa invariants
for Dirichlet characters along the cyclotomic Z_p-tower."""

__version__ = "0.1.0"
