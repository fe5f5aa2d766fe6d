"""Continued fractions of quadratic irrationals, Pisot recognition and
certified experiments on fractional parts of powers."""

__version__ = "0.1.0"
