from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

ElemId = str


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[ElemId, ...]

    def __str__(self) -> str:
        return f"{self.law} {format_witness(self.witness)}"


@dataclass(frozen=True)
class ValidationReport:
    """Verdict of an exhaustive law check.

    ``violations`` holds at most one witness per law, the first one met in
    lexicographic scan order. ``diagnostics`` records non-fatal observations
    such as whether each relation composition had unique middle witnesses.
    """

    violations: tuple[Violation, ...] = ()
    diagnostics: tuple[tuple[str, bool], ...] = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def laws(self) -> list[str]:
        return [v.law for v in self.violations]

    def witness(self, law: str) -> tuple[ElemId, ...] | None:
        for v in self.violations:
            if v.law == law:
                return v.witness
        return None

    def merge(self, *others: ValidationReport, prefix: str = "") -> ValidationReport:
        violations = list(self.violations)
        diagnostics = list(self.diagnostics)
        for other in others:
            violations.extend(Violation(prefix + v.law, v.witness) for v in other.violations)
            diagnostics.extend((prefix + name, flag) for name, flag in other.diagnostics)
        return ValidationReport(tuple(violations), tuple(diagnostics))

    def prefixed(self, prefix: str) -> ValidationReport:
        return ValidationReport().merge(self, prefix=prefix)


class ReportBuilder:
    """Collects the first witness for each law, in the order laws first fail."""

    def __init__(self):
        self._seen: dict[str, tuple[ElemId, ...]] = {}
        self._diagnostics: list[tuple[str, bool]] = []

    def fail(self, law: str, *witness: ElemId) -> None:
        self._seen.setdefault(law, tuple(witness))

    def failed(self, law: str) -> bool:
        return law in self._seen

    def diagnose(self, name: str, flag: bool) -> None:
        self._diagnostics.append((name, flag))

    def extend(self, report: ValidationReport, prefix: str = "") -> None:
        for v in report.violations:
            self.fail(prefix + v.law, *v.witness)
        for name, flag in report.diagnostics:
            self.diagnose(prefix + name, flag)

    def build(self) -> ValidationReport:
        return ValidationReport(
            tuple(Violation(law, w) for law, w in self._seen.items()),
            tuple(self._diagnostics),
        )


def format_witness(witness: Iterable[ElemId]) -> str:
    return "(" + ", ".join(witness) + ")"
