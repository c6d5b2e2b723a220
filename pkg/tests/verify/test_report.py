import json
import math

import pytest

from wicksell_tails.config.settings import GridSpec
from wicksell_tails.errors import UsageError
from wicksell_tails.verify.report import (
    COLUMNS,
    ReportFormat,
    ReportMetadata,
    ReportRow,
    VerificationReport,
    load_report,
    render_report,
)


def make_row(**overrides):
    fields = dict(
        scenario_id="theorem1",
        cell="alpha=0.5,eta=0",
        law="power(alpha=0.5)",
        eta=0.0,
        r=1,
        predicted_beta=1.5,
        beta_hat=1.52,
        method="local-exponent",
        tolerance=0.1,
    )
    fields.update(overrides)
    return ReportRow(**fields)


@pytest.fixture
def report():
    metadata = ReportMetadata(seed=42, grid=GridSpec(points=64))
    rows = [
        make_row(),
        make_row(cell="alpha=1,eta=0", boundary=True, beta_hat=1.7, predicted_beta=2.0, tolerance=0.15),
        make_row(cell="broken", beta_hat=None, error="TabulationError: boom"),
    ]
    return VerificationReport(rows=rows, metadata=metadata)


def test_row_passes_within_tolerance():
    assert make_row().passed
    assert not make_row(beta_hat=1.7).passed
    assert not make_row(beta_hat=None).passed
    assert not make_row(beta_hat=math.nan).passed
    assert not make_row(error="DomainError: x").passed


def test_check_rows_compare_with_their_target():
    check = make_row(method="semigroup-supnorm", predicted_beta=None, target=0.0, beta_hat=4e-5, tolerance=1e-3)
    assert check.passed
    assert not check.model_copy(update={"beta_hat": 2e-3}).passed
    assert not make_row(target=2.0).passed
    assert not make_row(predicted_beta=None).passed
    assert check.model_dump()["predicted_beta"] is None


def test_report_failures(report):
    assert not report.passed
    assert [row.cell for row in report.failures()] == ["alpha=1,eta=0", "broken"]


def test_merge_keeps_order_and_metadata(report):
    merged = report.merge(VerificationReport(rows=[make_row(cell="extra")], metadata=ReportMetadata(seed=1, grid=GridSpec())))
    assert [row.cell for row in merged.rows][-1] == "extra"
    assert merged.metadata.seed == 42


def test_render_json(report):
    data = json.loads(render_report(report, "json"))
    assert data["metadata"]["seed"] == 42
    assert data["rows"][0]["passed"] is True
    assert data["rows"][2]["error"] == "TabulationError: boom"


def test_render_csv(report):
    lines = render_report(report, ReportFormat.CSV).splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 4
    assert lines[1].startswith("theorem1,")


def test_render_markdown(report):
    lines = render_report(report, "markdown").splitlines()
    assert lines[0] == "| " + " | ".join(COLUMNS) + " |"
    assert len(lines) == 5
    assert "| 1.52 |" in lines[2]


def test_render_is_deterministic(report):
    assert render_report(report, "json") == render_report(report, "json")


def test_unknown_format(report):
    with pytest.raises(UsageError, match="Unknown report format: xml"):
        render_report(report, "xml")


def test_load_report_round_trip(report):
    loaded = load_report(render_report(report, "json"))
    assert loaded.rows == report.rows
    assert loaded.metadata == report.metadata
    assert render_report(loaded, "csv") == render_report(report, "csv")
