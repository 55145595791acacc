"""Declarative problem files: a JSON object describing one run."""
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dataclasses_json import Undefined, dataclass_json
from dataclasses_json.undefined import UndefinedParameterError

from padic_cauchy.enums import ProblemMode, does_member_value_exist
from padic_cauchy.errors import InputParseError, ValidationError


@dataclass_json(undefined=Undefined.RAISE)
@dataclass
class TermSpec:
    """One term a_beta(x) D^beta of a differential operator."""

    beta: List[int]
    coefficient: str


@dataclass_json(undefined=Undefined.RAISE)
@dataclass
class ProblemFile:
    """
    Rationals may be written as JSON integers or as `a/b` strings; p-adic points also
    accept the compact form `val=v digits=[...] prec=N`.
    """

    mode: str = ProblemMode.ODE.value
    prime: Optional[int] = None
    precision: Optional[int] = None
    depth: Optional[int] = None
    window: Optional[int] = None
    epsilon: Optional[Any] = None
    matrix: Optional[List[List[Any]]] = None
    initial: Optional[Any] = None
    """A list of rationals for a matrix problem, a polynomial string for a PDE."""
    points: List[Any] = field(default_factory=list)
    perturbations: Optional[List[List[Any]]] = None
    variables: Optional[int] = None
    rho_exponent: Optional[Any] = None
    truncation_degree: Optional[int] = None
    max_order: Optional[int] = None
    terms: Optional[List[TermSpec]] = None

    @property
    def problem_mode(self) -> ProblemMode:
        return ProblemMode(self.mode)

    def settings(self) -> Dict[str, Any]:
        """The fields that double as configuration, keyed as in `PadicConfig`."""
        return dict(
            prime=self.prime,
            precision=self.precision,
            terms=self.depth,
            window=self.window,
            epsilon=self.epsilon,
            truncation_degree=self.truncation_degree,
        )


REQUIRED_FIELDS: Dict[ProblemMode, List[str]] = {
    ProblemMode.ODE: ["matrix", "initial"],
    ProblemMode.ANALYZE: ["matrix", "initial"],
    ProblemMode.PDE: ["variables", "rho_exponent", "terms", "initial"],
}


def validate_problem(problem: ProblemFile) -> ProblemFile:
    """Checks that the mode is known and that every field it needs is present."""
    if not does_member_value_exist(problem.mode, ProblemMode):
        raise InputParseError(f"Unknown mode {problem.mode!r}", source="mode")
    for name in REQUIRED_FIELDS[problem.problem_mode]:
        if getattr(problem, name) is None:
            raise ValidationError(f"Field [{name}] is required in {problem.mode} mode.")
    if problem.problem_mode is not ProblemMode.PDE:
        if not isinstance(problem.initial, list):
            raise InputParseError("Initial data must be a list of rationals", source="initial")
        width = len(problem.initial)
        if len(problem.matrix) != width or any(len(row) != width for row in problem.matrix):
            raise InputParseError(
                f"The matrix must be {width}x{width} to match the initial vector", source="matrix"
            )
        for perturbation in problem.perturbations or []:
            if len(perturbation) != width:
                raise InputParseError(
                    "Perturbations must match the initial vector", source="perturbations"
                )
    elif not isinstance(problem.initial, str):
        raise InputParseError("Initial data must be a polynomial string", source="initial")
    return problem


def parse_problem(data: Union[str, Dict[str, Any]]) -> ProblemFile:
    """
    Build a ProblemFile from JSON text or an already decoded mapping.

    :raises InputParseError: on malformed JSON, unknown keys or wrongly shaped fields.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as error:
            raise InputParseError(f"Malformed JSON: {error.msg}", source=f"line {error.lineno}")
    if not isinstance(data, dict):
        raise InputParseError("A problem file holds a single JSON object")
    try:
        problem = ProblemFile.from_dict(data)
    except UndefinedParameterError as error:
        raise InputParseError(f"Unknown field: {error}")
    except (KeyError, TypeError, ValueError) as error:
        raise InputParseError(f"Malformed problem file: {error}")
    return validate_problem(problem)


def load_problem(path: Union[str, Path]) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as error:
        raise InputParseError(f"Cannot read problem file: {error.strerror}", source=str(path))
    return parse_problem(text)
