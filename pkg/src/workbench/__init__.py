"""Exact computations with Ariki-Koike, G(r,p,n) and cyclotomic KLR algebras."""
__version__ = "0.1.0"

__all__ = ["__version__"]
