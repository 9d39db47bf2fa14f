"""Exact cluster-variety computations on SL_n: seeds, g-vectors, potentials and cones."""

__version__ = "0.1.0"
