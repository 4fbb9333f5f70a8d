"""Domain-error hierarchy.

All parameter/feasibility violations raise DomainError (a ValueError), so the
CLI can map them to exit status 1 while genuine bugs surface normally.
"""

__all__ = [
    "DomainError",
    "IgnitionLevelError",
    "TruncationError",
    "ModeCollisionError",
    "PhaseResolutionError",
]


class DomainError(ValueError):
    """Invalid parameters or an infeasible request."""


class IgnitionLevelError(DomainError):
    """Ignition level at or above the left state: no monotone profile."""


class TruncationError(DomainError):
    """Requested half-line truncation leaves a non-negligible reactant tail."""


class ModeCollisionError(DomainError):
    """The two limiting spatial rates coincide; the decaying mode is not isolated."""


class PhaseResolutionError(DomainError):
    """Contour phase could not be resolved within the sample budget."""
