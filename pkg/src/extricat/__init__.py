"""Exact workbench for small k-linear extriangulated categories."""

__version__ = "0.1.0"
