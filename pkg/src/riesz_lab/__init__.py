"""Exact Gram matrices, finite-section Riesz bounds and translation
diagnostics for exponential systems on interval sets and the disk."""

__version__ = "0.1.0"
