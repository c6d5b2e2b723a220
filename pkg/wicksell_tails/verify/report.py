import io
import math
from enum import Enum
from typing import List, Optional

import pandas as pd
from pydantic import BaseModel, Field, computed_field

from ..config.settings import GridSpec
from ..errors import UsageError

COLUMNS = [
    "scenario_id",
    "cell",
    "law",
    "eta",
    "r",
    "predicted_beta",
    "target",
    "beta_hat",
    "method",
    "tolerance",
    "boundary",
    "passed",
    "error",
]


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    MARKDOWN = "markdown"

    @classmethod
    def values(cls) -> List[str]:
        return [fmt.value for fmt in cls]


class ReportRow(BaseModel):
    """
    One verification cell.

    Index rows compare an estimated exponent with `predicted_beta`, which is
    also their `target`. Check rows (oracle agreement, semigroup sup-norm,
    decay values) leave `predicted_beta` empty and carry the measured
    discrepancy in `beta_hat` against a target of 0; quadratic-constant rows
    compare a measured ratio with its limit as target. `passed` is always
    |beta_hat - target| <= tolerance, with `predicted_beta` standing in for a
    missing target.
    """

    scenario_id: str
    cell: str
    law: str
    eta: float
    r: int
    predicted_beta: Optional[float] = None
    target: Optional[float] = None
    beta_hat: Optional[float] = None
    method: str
    tolerance: float = Field(ge=0.0)
    boundary: bool = False
    error: Optional[str] = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        target = self.target if self.target is not None else self.predicted_beta
        if self.error is not None or self.beta_hat is None or target is None:
            return False
        if not math.isfinite(self.beta_hat):
            return False
        return abs(self.beta_hat - target) <= self.tolerance


class ReportMetadata(BaseModel):
    seed: int
    grid: GridSpec
    timestamp: Optional[str] = None


class VerificationReport(BaseModel):
    """Rows in cell order plus the settings that produced them."""

    rows: List[ReportRow] = Field(default_factory=list)
    metadata: ReportMetadata

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> List[ReportRow]:
        return [row for row in self.rows if not row.passed]

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(rows=[*self.rows, *other.rows], metadata=self.metadata)


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value).replace("|", "\\|")


def _markdown(report: VerificationReport) -> str:
    lines = [
        "| " + " | ".join(COLUMNS) + " |",
        "|" + "|".join("---" for _ in COLUMNS) + "|",
    ]
    for row in report.rows:
        data = row.model_dump()
        lines.append("| " + " | ".join(_cell(data[c]) for c in COLUMNS) + " |")
    return "\n".join(lines) + "\n"


def render_report(report: VerificationReport, fmt: str = ReportFormat.JSON) -> str:
    """
    Render a report as JSON, CSV or a markdown table.

    Raises:
        UsageError: If the format is unknown.

    Examples:
        >>> empty = VerificationReport(metadata=ReportMetadata(seed=42, grid=GridSpec()))
        >>> render_report(empty, "csv").splitlines()[0]
        'scenario_id,cell,law,eta,r,predicted_beta,target,beta_hat,method,tolerance,boundary,passed,error'
    """
    try:
        fmt = ReportFormat(fmt)
    except ValueError:
        raise UsageError(f"Unknown report format: {fmt}, available formats: {ReportFormat.values()}")
    if fmt == ReportFormat.JSON:
        return report.model_dump_json(indent=2) + "\n"
    if fmt == ReportFormat.CSV:
        frame = pd.DataFrame([row.model_dump() for row in report.rows], columns=COLUMNS)
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()
    return _markdown(report)


def load_report(text: str) -> VerificationReport:
    return VerificationReport.model_validate_json(text)


__all__ = [
    "COLUMNS",
    "ReportFormat",
    "ReportRow",
    "ReportMetadata",
    "VerificationReport",
    "render_report",
    "load_report",
]
