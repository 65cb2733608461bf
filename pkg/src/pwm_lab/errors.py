"""Exception types raised by pwm_lab."""


class PwmLabError(Exception):
    """Base class for all library errors."""


class DomainError(PwmLabError, ValueError):
    """A parameter lies outside the domain where an operation is defined."""


class ConfigurationError(PwmLabError, ValueError):
    """Inconsistent or invalid sampling / run configuration."""


class UndefinedMeasureError(PwmLabError, ArithmeticError):
    """A figure of merit is undefined, e.g. a zero fundamental."""
