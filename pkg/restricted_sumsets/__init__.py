"""Restricted sumsets and value sets over prime fields."""

__version__ = "1.0.0"
