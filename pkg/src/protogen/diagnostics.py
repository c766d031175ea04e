"""Structured diagnostics shared by the frontend, validator and CLI."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .spec_ast import Span

# Closed, stable set of diagnostic codes.
CODES = frozenset({
    "LEX_ERROR",
    "PARSE_ERROR",
    "DUPLICATE_CLASS",
    "DUPLICATE_TYPE_PARAM",
    "PARAM_NAME_MISMATCH",
    "MULTI_TYPE_EDGES",
    "MIXED_EDGES",
    "STATIC_CONFLICT",
})


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    message: str
    span: Span | None = None
    state: int | None = None

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def format_diagnostic(diag: Diagnostic, filename: str) -> str:
    """One-line rendering: ``<severity> <code> <file>:<line>:<col> <message>``."""
    line = diag.span.line if diag.span else 0
    col = diag.span.col if diag.span else 0
    return (f"{diag.severity.value} {diag.code} "
            f"{filename}:{line}:{col} {diag.message}")


def diagnostic_json(diag: Diagnostic, filename: str) -> dict:
    """JSON-friendly form used by the CLI's machine-readable output."""
    return {
        "severity": diag.severity.value,
        "code": diag.code,
        "file": filename,
        "line": diag.span.line if diag.span else 0,
        "col": diag.span.col if diag.span else 0,
        "state": diag.state,
        "message": diag.message,
    }
