"""Exception families, mapped to distinct CLI exit codes."""


class BosegasError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(BosegasError):
    """Invalid or unparsable configuration."""

    exit_code = 2


class ResolutionError(BosegasError):
    """A quadrature or grid cannot resolve the requested computation."""

    exit_code = 3


class MonitorViolation(BosegasError):
    """A runtime conservation/bound monitor was violated beyond tolerance."""

    exit_code = 4


class FermiNormalizationError(BosegasError):
    """The potential profile has zero mean and cannot be normalized."""

    exit_code = 2


class SingularModeError(BosegasError):
    """A per-mode linear solve hit a singular (sonic/supersonic) matrix."""

    exit_code = 3


class ResolutionWarning(UserWarning):
    """Quadrature resolution is marginal for the requested regularization."""
