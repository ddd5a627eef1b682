"""
Report serialization.

Output is deterministic: keys are sorted, rows keep the suite order and
nothing time-dependent is written, so equal runs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from enum import Enum
from pathlib import Path

from jinja2 import Template

from hyperdyn.exceptions import SpecError
from hyperdyn.harness.suite import ArrowResult, Report

TEMPLATES = Path(__file__).parent / "templates"

CSV_FIELDS = (
    "theorem",
    "system",
    "n",
    "premise_level",
    "premise_property",
    "conclusion_level",
    "conclusion_property",
    "kind",
    "status",
    "witness",
    "faithful_compactum",
    "verdicts",
)


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    MARKDOWN = "markdown"


def report_to_dict(report: Report) -> dict:
    data = {
        "version": report.version,
        "budget": report.budget,
        "substitutions": list(report.substitutions),
        "summary": dict(sorted(report.status_counts().items())),
        "results": [row.to_dict() for row in report.rows()],
    }
    if report.enumerated is not None:
        data["enumerated"] = report.enumerated
    return data


def report_from_dict(data: dict) -> Report:
    rows = [ArrowResult.from_dict(item) for item in data.get("results", [])]
    return Report.from_rows(
        data.get("version", ""),
        data.get("budget", {}),
        data.get("substitutions", []),
        rows,
        enumerated=data.get("enumerated"),
    )


def _csv_row(row: ArrowResult) -> dict:
    data = row.to_dict()
    arrow = data.pop("arrow")
    data["verdicts"] = json.dumps(data["verdicts"], sort_keys=True, ensure_ascii=False)
    data["faithful_compactum"] = str(row.faithful_compactum).lower()
    return {**data, **arrow}


def render_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in report.rows():
        writer.writerow(_csv_row(row))
    return buffer.getvalue()


def parse_csv(text: str) -> Report:
    """Rows only: a CSV report carries no version or budget."""
    rows = []
    for record in csv.DictReader(io.StringIO(text)):
        arrow = {key: record[key] for key in CSV_FIELDS[3:8]}
        rows.append(
            ArrowResult.from_dict(
                {
                    **record,
                    "arrow": arrow,
                    "verdicts": json.loads(record["verdicts"] or "{}"),
                    "faithful_compactum": record["faithful_compactum"] == "true",
                }
            )
        )
    return Report.from_rows("", {}, [], rows)


def render_markdown(report: Report) -> str:
    template = Template((TEMPLATES / "report.md.j2").read_text(), autoescape=False, keep_trailing_newline=True)
    return template.render(
        report=report,
        rows=report.rows(),
        summary=sorted(report.status_counts().items()),
        counterexamples=report.counterexamples(),
    )


def render_report(report: Report, fmt: ReportFormat | str) -> str:
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        return json.dumps(report_to_dict(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt is ReportFormat.CSV:
        return render_csv(report)
    return render_markdown(report)


def parse_report(text: str, fmt: ReportFormat | str = ReportFormat.JSON) -> Report:
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        return report_from_dict(json.loads(text))
    if fmt is ReportFormat.CSV:
        return parse_csv(text)
    raise SpecError("markdown reports are for reading, not parsing")


def format_for_path(path: str | Path) -> ReportFormat:
    suffix = Path(path).suffix.lower()
    return {".csv": ReportFormat.CSV, ".md": ReportFormat.MARKDOWN}.get(suffix, ReportFormat.JSON)


def emit_report(report: Report, fmt: ReportFormat | str | None, path: str | Path) -> Path:
    """Write ``report`` to ``path``; the format defaults to the one the suffix names."""
    path = Path(path)
    text = render_report(report, fmt or format_for_path(path))
    path.write_text(text, encoding="utf-8")
    return path
