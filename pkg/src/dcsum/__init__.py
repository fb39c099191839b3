"""Discharge-note preprocessing, input assembly, and n-gram scoring."""

__version__ = "0.1.0"
