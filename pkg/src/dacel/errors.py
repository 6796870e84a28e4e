"""Exception types shared across the package."""


class DacelError(Exception):
    """Base class for every error raised by this package."""


class EmptyData(DacelError):
    """No observations (or no positive-weight observations) to fit."""


class SingularDesign(DacelError):
    """Weighted Gram matrix is rank deficient beyond machine tolerance."""


class Separation(DacelError):
    """Logistic fit diverged (perfect or quasi-perfect separation)."""


class OneClassOnly(DacelError):
    """All effective responses belong to a single class."""


class ConstantColumn(DacelError):
    """A non-intercept column has zero sample variance."""


class NotInConvexHull(DacelError):
    """Hypothesized value lies outside (or on the boundary of) the hull
    of the empirical-likelihood points; the log ratio is -infinity."""


class NumericalFailure(DacelError):
    """Non-finite intermediates encountered by a solver."""


class DegenerateColumn(DacelError):
    """Coordinate column is constant; interval inversion is undefined."""


class TooManyBlocks(DacelError):
    """Requested block count leaves blocks too small to estimate on."""


class BlockEstimationFailed(DacelError):
    """A per-block estimator failed; carries the offending block id."""

    def __init__(self, block: int, cause: Exception):
        super().__init__(f"block {block}: {cause!r}")
        self.block = block
        self.cause = cause


class MissingColumn(DacelError):
    """A column named by the schema is absent from the CSV header."""


class UnmappableLabel(DacelError):
    """A response label is not covered by the schema's encoding rule."""


class EmptyAfterFiltering(DacelError):
    """Every row was dropped while ingesting a CSV file."""


class SchemaMismatch(DacelError):
    """Reports with incompatible layouts cannot be summarized together."""
