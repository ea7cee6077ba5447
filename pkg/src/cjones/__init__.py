"""High-precision checks of the colored Jones asymptotic expansion for the figure-eight knot."""

__version__ = "0.1.0"
