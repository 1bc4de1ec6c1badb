"""Regex patterns for the command line text formats."""

import re

# ===== SET FAMILIES =====
# Comma separated residues: "0,1,2" (negative values are reduced mod p)
INTEGER_LIST = re.compile(r"^\s*-?\d+(?:\s*,\s*-?\d+)*\s*$")

# {0, ..., m-1}
INTERVAL_SET = re.compile(r"^\s*interval\s*:\s*(\d+)\s*$", re.IGNORECASE)

# Z/pZ itself
FULL_SET = re.compile(r"^\s*full\s*$", re.IGNORECASE)

# Empty set written explicitly
EMPTY_SET = re.compile(r"^\s*(?:empty|\{\s*\})\s*$", re.IGNORECASE)

SET_SEPARATOR = re.compile(r"\s*;\s*")

# ===== NUMERIC RANGES =====
# "1..5" inclusive
INTEGER_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")

# ===== DIFFERENCE RESTRICTIONS =====
# "1,2=0,3" : x_1 - x_2 must avoid {0, 3}; pairs are one based
FORBIDDEN_DIFFERENCES = re.compile(
    r"^\s*(\d+)\s*,\s*(\d+)\s*=\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*$"
)

# ===== POLYNOMIAL FILES =====
# "arity n mod p" (mod 0 means exact integers)
POLY_HEADER = re.compile(r"^\s*arity\s+(\d+)\s+mod\s+(\d+)\s*$", re.IGNORECASE)

# "c j1 j2 ... jn"
POLY_TERM = re.compile(r"^\s*(-?\d+)((?:\s+\d+)+)\s*$")

COMMENT = re.compile(r"#.*$")
