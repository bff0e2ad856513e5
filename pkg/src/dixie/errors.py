"""Exception types shared across the package.

The CLI maps these onto distinct exit codes: usage problems exit 2,
numeric-range rejections 3, quadrature non-convergence 4, tainted
simulations 5.
"""


class DixieError(Exception):
    """Base class for all package errors."""


class LawParseError(DixieError):
    """A law spec token could not be parsed; message names the token."""


class WeightRangeError(DixieError):
    """Weight generation would overflow float64 at the requested size."""

    def __init__(self, message, max_size):
        super().__init__(message)
        self.max_size = max_size


class AmbiguousRareError(DixieError):
    """No unique decaying subfamily; the rare index must be given."""


class RareClassError(DixieError):
    """A growing (Case I) subfamily was designated as the rare one."""


class QuadratureConvergenceError(DixieError):
    """Adaptive integration did not converge; carries the partial result."""

    def __init__(self, message, partial_value, est_error):
        super().__init__(message)
        self.partial_value = partial_value
        self.est_error = est_error


class StateSpaceError(DixieError):
    """Exact chain solve rejected: state space too large."""

    def __init__(self, size, limit):
        super().__init__(
            f"chain state space has {size} states, above the {limit} limit"
        )
        self.size = size


class TaintedSimulationError(DixieError):
    """A summary with capped trials was used where a clean one is required."""
