"""Exception types raised across the package.

Every error is a subclass of :class:`CarimaError` so callers can catch the
whole family with one clause. Messages carry the offending date / row /
name where one exists; nothing is silently clamped or swallowed.
"""


class CarimaError(Exception):
    """Base class for all errors raised by this package."""


# -- series construction and transforms -------------------------------------

class NegativeVariance(CarimaError):
    """Range-based variance proxy came out negative (extreme close/open move
    relative to the day's range). Reported rather than clamped."""


class NonPositiveValue(CarimaError):
    """Log transform hit a value <= 0; message names the offending date."""


class SeriesTooShort(CarimaError):
    """Series shorter than the operation requires."""


class DegreesOfFreedomNonPositive(CarimaError):
    """Portmanteau test with lags <= number of fitted parameters."""


# -- model estimation --------------------------------------------------------

class NonStationaryParams(CarimaError):
    """AR/MA polynomial has a root on or inside the unit circle."""


class NonConvergence(CarimaError):
    """Optimizer failed to converge after the restart schedule."""


class SingularInformation(CarimaError):
    """Observed information matrix could not be inverted."""


class EstimabilityViolation(CarimaError):
    """Too many free parameters for the available sample."""


class MissingCovariate(CarimaError):
    """A required regressor column is absent or does not cover a date."""


class AllSpecsFailed(CarimaError):
    """Every candidate specification in a selection grid failed to fit."""


class DateMisalignment(CarimaError):
    """Two date-indexed objects do not line up where they must."""


# -- causal layer ------------------------------------------------------------

class HorizonExceedsData(CarimaError):
    """Requested effect horizon runs past the observed series."""


class InsufficientPsiWeights(CarimaError):
    """Fewer moving-average weights supplied than the horizon needs."""


class TooFewResiduals(CarimaError):
    """Bootstrap requested on an empty or too-small residual pool."""


# -- simulation --------------------------------------------------------------

class DateOutOfRange(CarimaError):
    """Effect injection date falls outside the series range."""


# -- ingestion ---------------------------------------------------------------

class GapInCalendar(CarimaError):
    """Daily calendar has missing days; message lists the gap dates."""


class DuplicateDate(CarimaError):
    """The same date appears twice in an input file."""


class UnparseableValue(CarimaError):
    """A cell could not be parsed; message reports the row number."""


class ConfigError(CarimaError):
    """Analysis configuration is malformed or references missing files."""


class ExperimentAborted(CarimaError):
    """Per-replication failure rate exceeded the tolerated budget."""
