"""
Exception hierarchy. Every error carries the process exit code the CLI uses
when the error escapes an experiment run.
"""


class FnlsError(Exception):
    exit_code = 1


class ConfigError(FnlsError, ValueError):
    """Malformed config, unknown kind, missing or invalid parameter."""
    exit_code = 2


class LatticeError(FnlsError, ValueError):
    """Frequency off the lattice, beyond K_max, or an unresolved support."""
    exit_code = 2


class PreconditionError(FnlsError, ValueError):
    """A mathematical precondition of an operation does not hold."""
    exit_code = 2


class BudgetExceededError(FnlsError):
    """A direct lattice sum or scan would exceed its evaluation budget."""
    exit_code = 3

    def __init__(self, message: str, estimated_cost: float = None, budget: float = None):
        super().__init__(message)
        self.estimated_cost = estimated_cost
        self.budget = budget


class NumericalAbort(FnlsError):
    """Non-finite values or a residue that signals a convention bug."""
    exit_code = 4

    def __init__(self, message: str, step: int = None):
        super().__init__(message)
        self.step = step


class ReportIOError(FnlsError, OSError):
    exit_code = 5
