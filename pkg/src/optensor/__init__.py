"""Combinatorial models for tensor products of operads."""

__version__ = "0.1.0"
