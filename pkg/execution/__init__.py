"""Exhaustive canonical search and the spectrum engine."""

__version__ = "0.1.0"
