"""Exact Macdonald, Koornwinder and genus-two difference operators, eigenpolynomials and duality checks."""

__version__ = "0.1.0"
