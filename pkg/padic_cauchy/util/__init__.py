"""Validation and parsing helpers shared by the solvers and the command line."""
from .assertions import *  # noqa
from .exponents import ceil_div, ceil_exponent, floor_exponent, is_finite, radius_law_exponent
