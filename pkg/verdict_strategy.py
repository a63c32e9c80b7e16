import logging
from collections.abc import Sequence
from enum import IntEnum

from opentelemetry import trace

from reporting.models import VerificationReport

logger = logging.getLogger(__name__)


class ExitStatus(IntEnum):
    OK = 0
    UNEXPECTED = 1
    CONFIGURATION = 2
    OUTPUT = 3


class VerdictStrategy:
    """Decides the run's exit status: every check must match its expectation."""

    def summary_lines(self, reports: Sequence[VerificationReport]) -> list[str]:
        lines = []
        for report in reports:
            status = "PASS" if report.ok else "FAIL"
            lines.append(
                f"{report.suite}: {status} ({report.summary.total} checks, "
                f"{report.summary.expected_failures} expected failures, {report.summary.unexpected} unexpected)"
            )
            for check in report.failing():
                lines.append(f"  unexpected: {check.name} residual={check.residual:.3e} tol={check.tol:.1e}")
        return lines

    def decide(self, reports: Sequence[VerificationReport]) -> ExitStatus:
        tracer = trace.get_tracer(__name__)
        with tracer.start_as_current_span("verdict_strategy") as span:
            unexpected = sum(report.summary.unexpected for report in reports)
            span.set_attribute("verdict.unexpected", unexpected)
            if not reports:
                logger.warning("No reports to judge")
                return ExitStatus.UNEXPECTED
            return ExitStatus.OK if unexpected == 0 else ExitStatus.UNEXPECTED
