"""The global configuration object for padic-cauchy."""
import json
import os
from fractions import Fraction
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .util import (
    is_epsilon_valid,
    is_positive_int_valid,
    is_precision_valid,
    is_prime_valid,
    is_terms_valid,
    is_window_valid,
    to_fraction,
)

ENVIRONMENT_KEYS: Dict[str, str] = {
    "prime": "PADIC_PRIME",
    "precision": "PADIC_PRECISION",
    "terms": "PADIC_TERMS",
    "window": "PADIC_WINDOW",
    "epsilon": "PADIC_EPSILON",
    "truncation_degree": "PADIC_TRUNCATION_DEGREE",
    "shells": "PADIC_SHELLS",
    "workers": "PADIC_WORKERS",
    "display_digits": "PADIC_DISPLAY_DIGITS",
}


def environment_overrides() -> Dict[str, Any]:
    """Read `PADIC_*` variables (a `.env` file included) into config keys."""
    load_dotenv()
    overrides: Dict[str, Any] = dict()
    for key, variable in ENVIRONMENT_KEYS.items():
        raw = os.getenv(variable)
        if raw is None or raw.strip() == "":
            continue
        overrides[key] = raw.strip() if key == "epsilon" else _int_or_raw(raw)
    return overrides


def _int_or_raw(raw: str) -> Any:
    try:
        return int(raw)
    except ValueError:
        return raw


class PadicConfig:
    DEFAULT_PRIME: int = 5
    """Prime used when a run does not name one."""

    DEFAULT_PRECISION: int = 32
    """Working precision N, in p-adic digits of relative precision."""

    DEFAULT_TERMS: int = 64
    """Series depth K."""

    DEFAULT_WINDOW: Optional[int] = None
    """Window of the limsup estimate; None means terms // 4."""

    DEFAULT_EPSILON: Fraction = Fraction(1, 2)
    """Shrink factor of the well-posedness disk, (1 - epsilon) * delta."""

    DEFAULT_TRUNCATION_DEGREE: int = 16
    """Truncation degree D of the analytic function space."""

    DEFAULT_SHELLS: int = 4
    """Norm shells sampled per perturbation in the well-posedness check."""

    DEFAULT_WORKERS: int = 1
    """Thread pool width for independent evaluations and verify suites."""

    DEFAULT_DISPLAY_DIGITS: int = 12
    """Digits rendered for exact values."""

    def __init__(self, config: Optional[Dict[str, Any]] = None) -> None:
        """
        This is the configuration object for a padic-cauchy run and its properties are
        used by the solvers, the verify suites and the command line.
        """
        settings = environment_overrides()
        settings.update(config or dict())

        if "prime" in settings:
            is_prime_valid(settings["prime"])
        self.prime: int = settings.get("prime", self.DEFAULT_PRIME)

        is_precision_valid(settings)
        self.precision: int = settings.get("precision", self.DEFAULT_PRECISION)

        is_terms_valid(settings)
        self.terms: int = settings.get("terms", self.DEFAULT_TERMS)

        is_window_valid(dict(settings, terms=self.terms))
        self.window: Optional[int] = settings.get("window", self.DEFAULT_WINDOW)

        is_epsilon_valid(settings)
        if "epsilon" in settings:
            self.epsilon: Fraction = to_fraction(settings["epsilon"])
        else:
            self.epsilon: Fraction = self.DEFAULT_EPSILON

        for field_name in ("truncation_degree", "shells", "workers", "display_digits"):
            is_positive_int_valid(settings, field_name)
        self.truncation_degree: int = settings.get(
            "truncation_degree", self.DEFAULT_TRUNCATION_DEGREE
        )
        self.shells: int = settings.get("shells", self.DEFAULT_SHELLS)
        self.workers: int = settings.get("workers", self.DEFAULT_WORKERS)
        self.display_digits: int = settings.get("display_digits", self.DEFAULT_DISPLAY_DIGITS)

    @property
    def effective_window(self) -> int:
        """The limsup window actually used: the configured one or terms // 4."""
        return self.window if self.window is not None else max(1, self.terms // 4)

    def merge(self, new_config: Optional[Dict[str, Any]] = None) -> "PadicConfig":
        """
        The method allows the merging of a run-level configuration
        adjustment (command-line flags, problem file fields) into the current configuration.
        """
        if new_config is None:
            return self
        config = self.to_dict()
        config.update({key: value for key, value in new_config.items() if value is not None})
        return PadicConfig(config)

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            prime=self.prime,
            precision=self.precision,
            terms=self.terms,
            window=self.window,
            epsilon=self.epsilon,
            truncation_degree=self.truncation_degree,
            shells=self.shells,
            workers=self.workers,
            display_digits=self.display_digits,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str, indent=2, sort_keys=True)
