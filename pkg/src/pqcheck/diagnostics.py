"""Coded, position-anchored findings produced by the script checker."""

from __future__ import annotations

from dataclasses import dataclass, field

# code -> (default severity, short description)
CODES = {
    "E001": ("error", "parse error"),
    "E002": ("error", "unknown unit"),
    "E101": ("error", "unit incompatibility in addition (Type 1 unit)"),
    "E102": ("error", "unit incompatibility in assignment (Type 2 unit)"),
    "E201": ("error", "kind incompatibility in addition (Type 1 KOQ)"),
    "E202": ("error", "kind incompatibility in assignment (Type 2 KOQ)"),
    "W301": ("warning", "untagged operand in tagged addition"),
}

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One finding, anchored at a 1-based (line, column) in the source."""

    code: str
    severity: str
    line: int
    column: int
    message: str
    payload: dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict[str, object]:
        return {
            "code": self.code,
            "severity": self.severity,
            "line": self.line,
            "column": self.column,
            "message": self.message,
            "payload": dict(self.payload),
        }

    def __str__(self) -> str:
        return (f"{self.line}:{self.column}: {self.code} "
                f"{self.severity}: {self.message}")


@dataclass
class DiagnosticReport:
    """All findings for one source, sorted by (line, column, code),
    plus the final value bound to each identifier."""

    diagnostics: list[Diagnostic] = field(default_factory=list)
    bindings: dict[str, object] = field(default_factory=dict)

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == ERROR]

    @property
    def warnings(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == WARNING]

    def has_errors(self) -> bool:
        return any(d.severity == ERROR for d in self.diagnostics)

    def sort(self) -> None:
        self.diagnostics.sort(key=lambda d: (d.line, d.column, d.code))
