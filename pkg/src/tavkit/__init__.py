"""Exact twisted Alexander polynomials of knots for finite-group representations."""

__version__ = "0.1.0"
