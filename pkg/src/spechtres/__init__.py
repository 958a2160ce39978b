"""Explicit minimal free resolutions of Specht ideals of shapes (n-2,2) and (d,d,1)."""

__version__ = "0.1.0"
