"""Writes verification reports as JSON and markdown."""

import json
import logging
import math
from collections.abc import Sequence
from enum import Enum
from pathlib import Path
from typing import Any

from reporting.models import SCHEMA_VERSION, VerificationReport

logger = logging.getLogger(__name__)

JSON_NAME = "report.json"
MARKDOWN_NAME = "report.md"


class OutputFormat(str, Enum):
    JSON = "json"
    MARKDOWN = "markdown"
    BOTH = "both"


def report_document(reports: Sequence[VerificationReport], config: dict[str, Any] | None = None) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config or {},
        "reports": [report.model_dump(mode="json") for report in reports],
    }


def render_json(reports: Sequence[VerificationReport], config: dict[str, Any] | None = None) -> str:
    """Stable key ordering; infinite residuals serialize as ``Infinity``."""
    return json.dumps(report_document(reports, config), sort_keys=True, indent=2) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return "inf" if math.isinf(value) else f"{value:.3e}" if value and abs(value) < 1e-3 else f"{value:g}"
    return str(value).replace("|", "\\|")


def _table(rows: list[dict[str, Any]]) -> list[str]:
    if not rows:
        return ["(empty)"]
    columns = list(rows[0])
    for row in rows[1:]:
        columns.extend(key for key in row if key not in columns)
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    lines += ["| " + " | ".join(_cell(row.get(column, "")) for column in columns) + " |" for row in rows]
    return lines


def render_markdown(reports: Sequence[VerificationReport]) -> str:
    lines = ["# Verification report", ""]
    lines += _table(
        [
            {
                "suite": r.suite,
                "status": "PASS" if r.ok else "FAIL",
                "checks": r.summary.total,
                "expected failures": r.summary.expected_failures,
                "unexpected": r.summary.unexpected,
            }
            for r in reports
        ]
    )
    for report in reports:
        lines += ["", f"## {report.suite}", ""]
        lines += _table(
            [
                {
                    "check": c.name,
                    "residual": c.residual,
                    "tol": c.tol,
                    "result": ("ok" if c.ok else "UNEXPECTED") + ("" if c.expect_pass else " (negative control)"),
                    "anchor": c.anchor,
                }
                for c in report.checks
            ]
        )
        for name, rows in report.tables.items():
            lines += ["", f"### {name}", ""]
            lines += _table(rows)
        if report.notes:
            lines += ["", "Notes:", ""]
            lines += [f"- {note}" for note in report.notes]
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"Cannot write report to {path}: {exc}") from exc
    logger.info("Wrote %s", path)


def emit(
    reports: Sequence[VerificationReport],
    output_format: OutputFormat,
    path: Path,
    config: dict[str, Any] | None = None,
) -> list[Path]:
    """Write the reports under directory ``path``; returns the files written."""
    written = []
    if output_format in (OutputFormat.JSON, OutputFormat.BOTH):
        target = path / JSON_NAME
        _write(target, render_json(reports, config))
        written.append(target)
    if output_format in (OutputFormat.MARKDOWN, OutputFormat.BOTH):
        target = path / MARKDOWN_NAME
        _write(target, render_markdown(reports))
        written.append(target)
    return written
