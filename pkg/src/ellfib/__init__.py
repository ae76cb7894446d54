"""Elliptic fibrations in characteristic 2: fibers, pullbacks, singularities."""

__version__ = "0.1.0"
