import json

import pytest

from hyperdyn.exceptions import SpecError
from hyperdyn.harness.catalog import load_catalog
from hyperdyn.harness.report import ReportFormat, emit_report, format_for_path, parse_report, render_report
from hyperdyn.harness.suite import Report, run_theorem_suite


@pytest.fixture(scope="module")
def report():
    return run_theorem_suite(load_catalog("golden377,rot4,id2"), "T1,T4,T24", (2,))


def test_json_round_trip(report):
    text = render_report(report, "json")
    assert parse_report(text) == report
    data = json.loads(text)
    assert data["summary"] == dict(sorted(report.status_counts().items()))
    assert data["substitutions"][0].startswith("T24:")


def test_csv_round_trip(report):
    parsed = parse_report(render_report(report, ReportFormat.CSV), "csv")
    assert parsed.rows() == report.rows()
    assert parsed.version == ""


def test_rendering_is_deterministic(report):
    for fmt in ReportFormat:
        assert render_report(report, fmt) == render_report(report, fmt)


def test_markdown(report):
    text = render_report(report, "markdown")
    assert text.startswith("# Theorem suite report")
    assert "## Substitutions" in text
    assert "| T4 | id2 | 2 |" in text
    assert "| product:z_transitive => suspension:z_transitive |" in text
    assert "| base:z_transitive =/=> product:z_transitive |" in text
    assert "&gt;" not in text
    with pytest.raises(SpecError):
        parse_report(text, "markdown")


def test_empty_report():
    empty = Report("0", {})
    assert json.loads(render_report(empty, "json"))["results"] == []
    assert render_report(empty, "csv").startswith("theorem,system,n,")
    assert "## Counterexamples" not in render_report(empty, "markdown")


@pytest.mark.parametrize(
    "name, fmt",
    [("out.json", ReportFormat.JSON), ("out.csv", ReportFormat.CSV), ("out.md", ReportFormat.MARKDOWN)],
)
def test_emit_by_suffix(tmp_path, report, name, fmt):
    assert format_for_path(name) is fmt
    path = emit_report(report, None, tmp_path / name)
    assert path.read_text(encoding="utf-8") == render_report(report, fmt)


def test_explicit_format_wins(tmp_path, report):
    path = emit_report(report, "csv", tmp_path / "out.json")
    assert path.read_text(encoding="utf-8").startswith("theorem,")
