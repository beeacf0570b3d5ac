"""Exception types shared across the package, and the q guard band."""

# Guard band for the deformation parameter: 1/(1-q) factors blow up at the
# right endpoint, q-power cutoffs degenerate at the left one.
Q_MIN = 1e-6
Q_MAX = 1.0 - 1e-6


class QDomainError(ValueError):
    """An input lies outside an operation's mathematical domain."""


class CapacityError(QDomainError):
    """A table lookup exceeds the precomputed capacity."""


class SingularityError(QDomainError):
    """Duhamel inversion attempted on a series with vanishing constant term."""


class CommutantError(QDomainError):
    """An operator fails the commutation test against the q-integration matrix."""


class SeriesFormatError(ValueError):
    """Malformed series/matrix JSON."""
