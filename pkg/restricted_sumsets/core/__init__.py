"""Arithmetic, enumeration and bound evaluation for restricted sumsets."""
