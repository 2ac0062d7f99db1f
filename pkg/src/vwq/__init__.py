"""Exact q-series engine for Vafa-Witten partition functions and S-duality checks."""

__version__ = "0.1.0"
