"""Exception hierarchy shared by the services and the command line.

Each exception class maps to one CLI exit code.
"""


class ObsimError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class SpecError(ObsimError, ValueError):
    """Invalid parameters or experiment spec."""

    exit_code = 2


class ConstructionError(SpecError):
    """A construction is not available for the requested (N_t, N)."""


class ConvergenceError(ObsimError, ArithmeticError):
    """Numerical non-convergence (quadrature budget exhausted, failed self-check)."""

    exit_code = 3
