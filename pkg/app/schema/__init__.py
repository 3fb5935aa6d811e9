from app.schema.classifier import ClassifierConfig
from app.schema.report import CheckReport, CheckResult, DcorReport, TestReport

__all__ = [
    "ClassifierConfig",
    "TestReport",
    "DcorReport",
    "CheckResult",
    "CheckReport",
]
