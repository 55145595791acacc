"""
Run reports. The machine rendering is the JSON form of the dataclasses below and the
text rendering walks the same objects, so both show identical numbers.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from dataclasses_json import dataclass_json

from padic_cauchy.enums import OutputFormat

PASS = "pass"
FAIL = "fail"


@dataclass_json
@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


@dataclass_json
@dataclass
class PointResult:
    point: str
    value: List[str]
    tail: str
    residual: Optional[str] = None
    residual_bound: Optional[str] = None


@dataclass_json
@dataclass
class Table:
    columns: List[str]
    rows: List[List[str]] = field(default_factory=list)

    def add_row(self, *cells: object) -> None:
        self.rows.append([str(cell) for cell in cells])


@dataclass_json
@dataclass
class SuiteOutcome:
    name: str
    status: str
    checked: int
    failures: List[str] = field(default_factory=list)
    details: Dict[str, str] = field(default_factory=dict)


@dataclass_json
@dataclass
class Report:
    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    results: Dict[str, str] = field(default_factory=dict)
    coefficients: List[List[str]] = field(default_factory=list)
    tables: Dict[str, Table] = field(default_factory=dict)
    evaluations: List[PointResult] = field(default_factory=list)
    checks: List[CheckOutcome] = field(default_factory=list)
    suites: List[SuiteOutcome] = field(default_factory=list)
    status: str = PASS

    def add_check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckOutcome(name, passed, detail))

    def finalize(self) -> "Report":
        passed = all(check.passed for check in self.checks) and all(
            suite.status == PASS for suite in self.suites
        )
        self.status = PASS if passed else FAIL
        return self

    @property
    def passed(self) -> bool:
        return self.status == PASS


def _section(title: str, lines: List[str]) -> List[str]:
    return [f"{title}:"] + [f"  {line}" for line in lines] if lines else []


def render_text(report: Report) -> str:
    lines = [f"command: {report.command}", f"status: {report.status}"]
    lines += _section("inputs", [f"{k}: {v}" for k, v in sorted(report.inputs.items())])
    lines += _section("results", [f"{k}: {v}" for k, v in sorted(report.results.items())])
    lines += _section(
        "coefficients",
        [f"c_{k}: {' | '.join(entries)}" for k, entries in enumerate(report.coefficients)],
    )
    evaluations = []
    for item in report.evaluations:
        evaluations.append(f"z = {item.point}")
        evaluations += [f"  y_{i} = {value}" for i, value in enumerate(item.value)]
        evaluations.append(f"  tail <= {item.tail}")
        if item.residual is not None:
            evaluations.append(f"  residual {item.residual} (bound {item.residual_bound})")
    lines += _section("evaluations", evaluations)
    for name, table in sorted(report.tables.items()):
        lines += _section(
            name.replace("_", " "),
            [" | ".join(table.columns)] + [" | ".join(row) for row in table.rows],
        )
    lines += _section(
        "checks",
        [
            f"[{PASS if c.passed else FAIL}] {c.name}" + (f" - {c.detail}" if c.detail else "")
            for c in report.checks
        ],
    )
    suites = []
    for suite in report.suites:
        suites.append(f"[{suite.status}] {suite.name} ({suite.checked} checks)")
        suites += [f"  {k}: {v}" for k, v in sorted(suite.details.items())]
        suites += [f"  failure: {failure}" for failure in suite.failures]
    lines += _section("suites", suites)
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.MACHINE:
        return report.to_json(indent=2, sort_keys=True) + "\n"
    return render_text(report)
