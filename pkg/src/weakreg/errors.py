"""Exception types shared across the package."""


class WeakregError(Exception):
    """Base class for all weakreg errors."""


class DimensionMismatch(WeakregError):
    """Operands have incompatible shapes."""


class SingularInnerMatrix(WeakregError):
    """The small reduced system of the low-rank solve is singular.

    Usually means gamma is too large relative to the ridge term, so the
    full system matrix is not positive definite.
    """


class NotPositiveDefinite(WeakregError):
    """A matrix required to be symmetric positive definite is not."""


class NonFiniteFeature(WeakregError):
    """Feature matrix contains NaN or infinite entries."""


class AsymmetricInput(WeakregError):
    """A matrix required to be symmetric is not."""


class KExceedsN(WeakregError):
    """Requested more clusters than there are points."""


class DenseMemoryGuard(WeakregError):
    """Refused to materialize an n-by-n similarity matrix for large n."""


class InconsistentView(WeakregError):
    """A labeled-first ordering does not match the labels it claims to order."""


class EmptyTestSet(WeakregError):
    """Metric requested over an empty test mask."""


class TooFewPoints(WeakregError):
    """Not enough points to satisfy the requested role assignment."""


class SchemaMismatch(WeakregError):
    """A referenced CSV column is missing from the file."""

    def __init__(self, column: str, message: str | None = None):
        self.column = column
        super().__init__(message or f"column {column!r} not found")


class ParseError(WeakregError):
    """A CSV cell could not be parsed as a number."""

    def __init__(self, row: int, column: str, message: str | None = None):
        self.row = row
        self.column = column
        super().__init__(
            message or f"row {row}, column {column!r}: not a valid number"
        )


class InsufficientLabels(WeakregError):
    """Too few observed labels for the requested cross-validation."""
