"""Validation reports: named checks with the first offending index and residual."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any

from .errors import InvariantViolation, ValidationFailed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    index: tuple[Any, ...] | None = None
    residual: Any = None
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.index is not None:
            out["index"] = list(self.index)
        if self.residual is not None:
            to_json = getattr(self.residual, "to_json", None)
            out["residual"] = to_json() if to_json is not None else str(self.residual)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ValidationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((check for check in self.checks if not check.passed), None)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def names(self) -> list[str]:
        return [check.name for check in self.checks]

    def add(self, name: str, passed: bool, index=None, residual=None, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, passed, index, residual, detail))
        return passed

    def expect_equal(self, name: str, cases: Iterable[tuple[Any, Any, Any]]) -> bool:
        """Record one check over ``(index, lhs, rhs)`` cases, stopping at the first mismatch."""
        for index, lhs, rhs in cases:
            if lhs != rhs:
                residual = lhs - rhs
                return self.add(name, False, index if isinstance(index, tuple) else (index,), residual)
        return self.add(name, True)

    def expect(self, name: str, predicate: Callable[[], bool], detail: str = "") -> bool:
        return self.add(name, bool(predicate()), detail=detail)

    def extend(self, other: ValidationReport, prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(
                CheckResult(prefix + check.name, check.passed, check.index, check.residual, check.detail)
            )
        self.notes.update(other.notes)

    def require(self) -> ValidationReport:
        """Raise ValidationFailed unless every check passed."""
        if not self.ok:
            raise ValidationFailed(self)
        return self

    def assert_ok(self, context: str = "") -> ValidationReport:
        """Raise InvariantViolation unless every check passed."""
        if not self.ok:
            failure = self.first_failure
            message = f"{context or self.subject}: guaranteed check '{failure.name}' failed"
            logger.error("%s (index=%s, residual=%s)", message, failure.index, failure.residual)
            raise InvariantViolation(message, self)
        return self

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [check.to_dict() for check in self.checks],
        }
        if self.notes:
            out["notes"] = {key: _jsonable(value) for key, value in self.notes.items()}
        return out


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    to_json = getattr(value, "to_json", None)
    return to_json() if to_json is not None else str(value)
