"""Repeat-replacement codes reconstructable from substring spectra."""

__version__ = "0.1.0"
