"""Report data model shared by the operator checks, the suites and the emitters."""

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1
PLUMBING = "plumbing"


class CheckResult(BaseModel):
    """One named check: a residual compared against a tolerance."""

    # infinite residuals stay infinite in mode="json" dumps
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    name: str
    residual: float
    tol: float
    passed: bool
    expect_pass: bool = True
    anchor: str = PLUMBING
    note: str | None = None

    @property
    def ok(self) -> bool:
        """A check is green when its outcome matches the expectation (negative controls must fail)."""
        return self.passed == self.expect_pass


class ReportSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    total: int
    passed: int
    failed: int
    expected_failures: int
    unexpected: int


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    suite: str
    checks: list[CheckResult]
    summary: ReportSummary
    tables: dict[str, list[dict[str, Any]]] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)
    environment: dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.summary.unexpected == 0

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(f"No check named {name!r} in suite {self.suite!r}")

    def failing(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]


class ReportBuilder:
    """Accumulates checks, tables and notes, then freezes them into a ``VerificationReport``."""

    def __init__(self, suite: str) -> None:
        self.suite = suite
        self._checks: list[CheckResult] = []
        self._tables: dict[str, list[dict[str, Any]]] = {}
        self._notes: list[str] = []

    def add(
        self,
        name: str,
        residual: float,
        tol: float,
        *,
        anchor: str = PLUMBING,
        expect_pass: bool = True,
        note: str | None = None,
    ) -> CheckResult:
        residual = float(residual)
        if math.isnan(residual):
            # NaN never satisfies a tolerance; store it as +inf so JSON stays valid
            residual = math.inf
        result = CheckResult(
            name=name,
            residual=residual,
            tol=float(tol),
            passed=residual <= tol,
            expect_pass=expect_pass,
            anchor=anchor,
            note=note,
        )
        self._checks.append(result)
        return result

    def add_flag(
        self, name: str, holds: bool, *, anchor: str = PLUMBING, expect_pass: bool = True, note: str | None = None
    ) -> CheckResult:
        """Record a yes/no check as residual 0 (holds) or 1 (violated) with tolerance 0."""
        return self.add(name, 0.0 if holds else 1.0, 0.0, anchor=anchor, expect_pass=expect_pass, note=note)

    def add_max(
        self, name: str, residuals: list[float], tol: float, **kwargs: Any
    ) -> CheckResult:
        """Record the worst residual over a sweep."""
        return self.add(name, max(residuals, default=0.0), tol, **kwargs)

    def extend(self, report: VerificationReport, prefix: str = "") -> None:
        for result in report.checks:
            self._checks.append(result.model_copy(update={"name": prefix + result.name}))
        for key, rows in report.tables.items():
            self._tables[prefix + key] = rows
        self._notes.extend(report.notes)

    def table(self, name: str, rows: list[dict[str, Any]]) -> None:
        self._tables[name] = rows

    def note(self, text: str) -> None:
        if text not in self._notes:
            self._notes.append(text)

    def build(self, environment: dict[str, Any] | None = None) -> VerificationReport:
        passed = sum(c.passed for c in self._checks)
        expected_failures = sum((not c.passed) and (not c.expect_pass) for c in self._checks)
        unexpected = sum(not c.ok for c in self._checks)
        return VerificationReport(
            suite=self.suite,
            checks=list(self._checks),
            summary=ReportSummary(
                total=len(self._checks),
                passed=passed,
                failed=len(self._checks) - passed,
                expected_failures=expected_failures,
                unexpected=unexpected,
            ),
            tables=dict(self._tables),
            notes=list(self._notes),
            environment=dict(environment or {}),
        )
