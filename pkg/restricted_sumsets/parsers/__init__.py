"""Parsers for the command line text formats."""

from restricted_sumsets.parsers.family_parser import FamilyParser
from restricted_sumsets.parsers.poly_parser import PolynomialParser

__all__ = ["FamilyParser", "PolynomialParser"]
