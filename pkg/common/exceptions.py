class SpdcError(Exception):
    """
    Base error for the toolkit.

    Carries the same three parts the error envelope renders:
    a machine readable code, a message and a details mapping.
    """
    default_code = 'error'
    exit_code = 1

    def __init__(self, message, details=None, code=None):
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.code = code or self.default_code


class ConfigError(SpdcError):
    default_code = 'config_error'
    exit_code = 2


class InfeasibleTargetError(SpdcError):
    """Raised when a target state cannot be engineered without post-filtering."""
    default_code = 'infeasible_target'
    exit_code = 3


class NumericalError(SpdcError):
    """Quadrature or solver failure (non-convergence, rank deficiency, blow-up)."""
    default_code = 'numerical_error'
    exit_code = 4


class DomainValueError(SpdcError, ValueError):
    """Precondition violation on a domain value (negative index, bad grid, ...)."""
    default_code = 'invalid_value'
    exit_code = 2
