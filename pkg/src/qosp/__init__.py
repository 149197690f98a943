"""Exact computations for the quantum superalgebras osp(2,2) and osp(1,2)."""

__version__ = "0.1.0"
