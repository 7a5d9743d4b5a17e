"""Exception types raised across the package."""


class SoftHeatError(Exception):
    """Base class for all package errors."""


class DomainError(SoftHeatError, ValueError):
    """An argument lies outside the domain of a formula or process."""


class ConstraintError(SoftHeatError, ValueError):
    """A cycle or design violates a physical feasibility constraint."""


class ConsistencyError(SoftHeatError, ValueError):
    """Gas properties supplied together disagree (gamma != 1 + 1/c_v)."""


class UndefinedEfficiencyError(SoftHeatError, ArithmeticError):
    """Efficiency requested for a cycle with no heat input."""


class InfeasibleTargetError(ConstraintError):
    """A target pressure needs a negative mass."""


class AlignmentError(SoftHeatError, ValueError):
    """Two load profiles are not sampled at the same angles."""


class EmptyRegionError(SoftHeatError, ValueError):
    """A ratio grid has no feasible cell to render."""


class SchemaError(SoftHeatError, ValueError):
    """A time-series file lacks a required column."""

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"missing required column {column!r}")


class DataError(SoftHeatError, ValueError):
    """A time-series file has malformed rows."""

    def __init__(self, row, message):
        self.row = row
        super().__init__(f"row {row}: {message}")


class PlausibilityWarning(UserWarning):
    """A computed value looks like the result of a unit mix-up."""
