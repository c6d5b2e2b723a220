from .predict import predict_beta
from .report import (
    ReportFormat,
    ReportMetadata,
    ReportRow,
    VerificationReport,
    load_report,
    render_report,
)
from .scenarios import run_all, run_corollary_check, run_theorem1_matrix, run_theorem2_check

__all__ = [
    "predict_beta",
    "ReportFormat",
    "ReportMetadata",
    "ReportRow",
    "VerificationReport",
    "load_report",
    "render_report",
    "run_all",
    "run_corollary_check",
    "run_theorem1_matrix",
    "run_theorem2_check",
]
