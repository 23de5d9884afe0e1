"""Exact computational tools for classifying triangulated surfaces."""

__version__ = "0.1.0"
