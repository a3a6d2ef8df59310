"""Exact q-series engine: Jackson-dual identities, reverse bisection, pi-limits."""

__version__ = "0.1.0"
