"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI:
    ParityError / bad arguments  -> 2
    GuardExceededError           -> 3
    CertificationError           -> 4
"""


class ExpanderForgeError(Exception):
    """Base class for all package errors."""


class ParityError(ExpanderForgeError):
    """(chi, n) violates the model constraint: 3*chi - n must be a
    non-negative even integer."""


class GuardExceededError(ExpanderForgeError):
    """An exact search or enumeration would exceed its configured guard."""


class CertificationError(ExpanderForgeError):
    """A base-graph provider could not certify the required Cheeger bound."""


class SolverError(ExpanderForgeError):
    """Internal inconsistency in a numerical solve (e.g. an interior
    Dirichlet block that fails its positive-definite factorization)."""
