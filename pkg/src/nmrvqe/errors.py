"""Exception hierarchy shared across the package.

Three error classes map onto the CLI / service exit contract:
usage errors (malformed or ill-shaped input), data errors (well-formed
input that is physically inconsistent), and numerical errors (a
procedure failed to converge or produced non-finite values).
"""


class NmrVqeError(Exception):
    """Base class for all package errors."""


class UsageError(NmrVqeError, ValueError):
    """Invalid arguments: bad shapes, orderings, domains, or counts."""


class DataError(NmrVqeError):
    """Input is well-formed but internally inconsistent (e.g. a spectrum
    whose line spacings violate the system's coupling relations)."""


class NumericalError(NmrVqeError):
    """A numerical procedure failed (non-convergence, NaN objective)."""
