"""Exception types shared across the library.

Every error that can abort a verification carries enough context (index,
witness text) to be reported as a first-class failure instead of a bare
traceback.
"""
from __future__ import annotations


class SomosHankelError(Exception):
    """Base class for all library errors."""


class VarTableMismatch(SomosHankelError):
    """Operands live over different variable tables."""


class NotDivisible(SomosHankelError):
    """Exact division left a nonzero remainder.

    Inside a verification run this signals a violated identity; the
    ``witness`` (canonical text of the offending remainder) and, where
    known, the sequence ``index`` are attached.
    """

    def __init__(self, message: str, *, witness: str | None = None,
                 index: int | None = None):
        super().__init__(message)
        self.witness = witness
        self.index = index


class ZeroAtNegativeExponent(SomosHankelError):
    """Evaluation assigned zero to a variable with a negative exponent."""


class ZeroTerm(SomosHankelError):
    """A recurrence produced a zero term; subsequent divisions undefined."""

    def __init__(self, message: str, *, index: int | None = None):
        super().__init__(message)
        self.index = index


class ZeroPivot(SomosHankelError):
    """A pivot required to be nonzero vanished."""


class NonzeroPivotViolation(ZeroPivot):
    """Family parameters drove a transformation pivot to zero."""


class DimensionTooLarge(SomosHankelError):
    """Cofactor expansion requested beyond its cost guard."""


class InternalInconsistency(SomosHankelError):
    """An arithmetic invariant failed (e.g. a fraction-free elimination
    division was inexact), indicating a bug rather than a math failure."""
