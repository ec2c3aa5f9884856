"""Exception types shared across the package."""


class QcplanError(Exception):
    """Base class for domain errors raised by this package."""


class AboveThresholdError(QcplanError):
    """Physical error rate is at or above the code threshold 1/c2.

    Increasing the code distance makes the logical error rate worse, so no
    distance can reach the requested target.
    """


class NoCrossingError(QcplanError):
    """Logical-error curves for different distances do not intersect on the
    sampled grid."""


class InsufficientDataError(QcplanError):
    """Too few usable points for a scaling fit."""


class DegenerateDesignError(QcplanError):
    """Fit points do not span at least two distances and two error rates."""


class NonTrivialResidualSyndromeError(QcplanError):
    """Residual error after applying a decoder correction still triggers
    stabilizer checks.

    This can only happen through a bug in the matching-to-correction
    conversion; it is checked on every trial.
    """


class ConfigError(QcplanError):
    """Invalid or incomplete run configuration (usage error, exit code 2)."""
