"""Exact-arithmetic toolkit for line configurations on projective K3 models."""

__version__ = "0.1.0"
