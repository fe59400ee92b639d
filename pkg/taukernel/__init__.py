"""Fredholm determinants, tau functions and Coulomb-fluid identities for Hankel operators."""

__version__ = "0.1.0"
