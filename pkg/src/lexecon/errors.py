"""Exception hierarchy shared by all pipeline stages.

The three direct subclasses of :class:`LexeconError` correspond to the CLI
exit codes: ``ConfigError`` -> 2, ``DataError`` -> 3, ``NumericalError`` -> 4.
"""


class LexeconError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(LexeconError):
    """Invalid or inconsistent run configuration."""


class DataError(LexeconError):
    """Malformed, missing or degenerate input data."""


class NumericalError(LexeconError):
    """A numerical procedure failed (singularity, overflow, non-convergence)."""


# -- lexicon ---------------------------------------------------------------

class EmptyListError(DataError):
    """Word-list file contains no tokens after filtering."""


class OutOfScaleError(DataError):
    """A rating falls outside the table's declared scale."""


class NoOverlapError(DataError):
    """A word-list shares no entries with a rating/embedding table."""


# -- resampling ------------------------------------------------------------

class InsufficientMatchError(DataError):
    """Valence-bucket matching produced fewer than two matched words."""


# -- extrapolation ---------------------------------------------------------

class DimensionMismatchError(DataError):
    """Embedding rows disagree on vector dimension."""


# -- structure -------------------------------------------------------------

class DegenerateDataError(DataError):
    """Input matrix has too little rank/variance for the requested analysis."""


class LabelTieError(DataError):
    """Cluster labeling statistic is tied; an explicit override is required."""


# -- sentiment -------------------------------------------------------------

class ZeroLengthError(DataError):
    """Article has no tokens, so its score is undefined."""


# -- econometrics ----------------------------------------------------------

class ConstantSeriesError(DataError):
    """A series is constant, so unit-root regressions are undefined."""


class CollinearRegressorsError(NumericalError):
    """Regressor matrix is rank deficient."""


class NotPositiveDefiniteError(NumericalError):
    """Covariance matrix is not positive definite even after ridging."""


class ExplosiveModelError(NumericalError):
    """Companion roots outside the unit circle overflowed the response path."""


# -- cli -------------------------------------------------------------------

class MissingBundleError(ConfigError):
    """A prediction was requested before a regressor bundle was trained."""


class MissingModelError(ConfigError):
    """IRF/FEVD requested before a model was estimated."""
