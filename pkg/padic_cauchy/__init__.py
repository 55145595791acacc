"""padic-cauchy: the Cauchy problem y' = Ay over Q_p by exponential-type series."""
__version__ = "0.1.0"

import logging
from logging import NullHandler

from .cauchy_solver import SeriesSolution, build_solution, evaluate, wellposedness_check
from .padic_arith import LogNorm, PadicNumber, Prime, from_rational
from .padic_config import PadicConfig

logging.getLogger(__name__).addHandler(NullHandler())
