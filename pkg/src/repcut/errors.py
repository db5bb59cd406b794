"""Exception types shared across the package.

Everything raised on purpose derives from RepcutError so callers can catch
library failures without trapping programming errors.
"""

from __future__ import annotations


class RepcutError(Exception):
    """Base class for all errors raised deliberately by this package."""


class StructuralError(RepcutError):
    """Malformed input structure: unknown nodes, bad indices, duplicate ids."""


class PreconditionError(RepcutError):
    """An operation was called outside its documented domain."""


class InstanceValidationError(RepcutError):
    """A labeling instance violates its mode's terminal or label conditions."""


class InfeasibleInstanceError(RepcutError):
    """The instance admits no feasible solution.

    Carries a witness describing the violated condition when one exists.
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class CapExceededError(RepcutError):
    """An enumeration solver refused input above its configured cap."""


class BudgetExceededError(RepcutError):
    """An exact oracle ran past its node or time budget."""


class SolverFailureError(RepcutError):
    """An internal algorithm failed a self-check; indicates a bug."""
