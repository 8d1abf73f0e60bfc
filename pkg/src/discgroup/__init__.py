"""Numerical toolkit for discrete groups of Poincare-disc isometries."""

__version__ = "0.1.0"
