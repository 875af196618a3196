"""Atom spectra and Serre subcategories of finite rings."""

__version__ = "0.1.0"
