"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class DGCError(Exception):
    """Base class for every error raised by this package."""


class MalformedTable(DGCError):
    """A groupoid table references unknown ids, is not total, or conflicts.

    ``field`` names the offending table and ``ident`` the offending id.
    """

    def __init__(self, message: str, field: str | None = None, ident: str | None = None):
        super().__init__(message)
        self.field = field
        self.ident = ident


class BadParams(DGCError):
    """Builder parameters are not well formed for the requested kind."""


class InvalidGroupoid(DGCError):
    """An operation required a valid groupoid and did not get one."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class MalformedRelation(DGCError):
    """A relation has a pair outside its declared carriers."""


class CarrierMismatch(DGCError):
    """Two relations were composed over different middle carriers."""


class MalformedStructure(DGCError):
    """The four groupoids of a double groupoid do not fit together."""


class InvalidDouble(DGCError):
    """An operation required a valid double groupoid and did not get one."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CoreAxiomFailure(DGCError):
    """The derived core groupoid structure is not a groupoid."""


class NotInCoisotropic(DGCError):
    """A square was passed to a leaf computation outside its subset."""


class WitnessedError(DGCError):
    """An error pinned to concrete element ids."""

    def __init__(self, message: str, witness: tuple[str, ...] = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotAPartition(WitnessedError):
    """Computed leaves overlap without coinciding."""


class SectionFailure(WitnessedError):
    """A leaf does not meet its core section in exactly one square."""


class ParseError(DGCError):
    """Input could not be parsed; ``line`` and ``field`` locate the problem."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        text = f"{message} ({', '.join(where)})" if where else message
        super().__init__(text)
        self.line = line
        self.field = field


class ValidationError(DGCError):
    """A parsed structure failed validation; carries the report."""

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


class UnsupportedFormat(DGCError):
    """The requested output format is not available for this structure."""
