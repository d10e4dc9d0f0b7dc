"""Test suite for sigma-spectra."""
