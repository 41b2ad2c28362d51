"""Exceptions raised by twistlab."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .report import ValidationReport


class TwistlabError(ValueError):
    """Base class for every error raised on bad input."""


class FieldMismatch(TwistlabError):
    pass


class DivisionByZero(TwistlabError, ZeroDivisionError):
    pass


class ParseError(TwistlabError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class SignatureMismatch(TwistlabError):
    pass


class BadPositions(TwistlabError):
    pass


class NotInvertible(TwistlabError):
    pass


class WrongWeakContext(TwistlabError):
    pass


class NotCentral(TwistlabError):
    pass


class NotTriangular(TwistlabError):
    pass


class CompositionMismatch(TwistlabError):
    pass


class BoundaryMismatch(TwistlabError):
    pass


class ModeMismatch(TwistlabError):
    pass


class ProjectionMismatch(TwistlabError):
    pass


class CounitNotOne(TwistlabError):
    pass


class ZeroScale(TwistlabError):
    pass


class CapExceeded(TwistlabError):
    pass


class DocumentError(TwistlabError):
    pass


class ConfigError(TwistlabError):
    pass


class ValidationFailed(TwistlabError):
    """A user-supplied object failed its axioms."""

    def __init__(self, report: ValidationReport):
        failure = report.first_failure
        name = failure.name if failure is not None else "unknown"
        super().__init__(f"{report.subject}: check '{name}' failed")
        self.report = report


class InvariantViolation(TwistlabError, AssertionError):
    """A check that the theory guarantees has failed; this is a bug."""

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report
