"""Domain model, checkers, constructions and the command-line surface for sigma-spectra."""

__version__ = "0.1.0"
