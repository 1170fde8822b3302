"""basewright: a verification workbench for base sizes of primitive
permutation groups built from classical-group subspace actions."""

__version__ = "0.1.0"
