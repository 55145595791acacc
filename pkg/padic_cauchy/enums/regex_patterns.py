"""Enumeration of Regular Expression patterns used by the parsers."""
from enum import Enum


class RegexPatterns(Enum):
    RATIONAL = r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$"
    COMPACT_PADIC = r"^\s*val=(-?\d+|inf)\s+digits=\[([\d,\s]*)\]\s+prec=(\d+|inf)\s*$"
    VARIABLE_POWER = r"^x(\d+)(?:\^(\d+))?$"
    RATIONAL_FACTOR = r"^\d+(?:/\d+)?$"
    SIGNED_TERM = r"([+-]?)\s*([^+-]+)"
