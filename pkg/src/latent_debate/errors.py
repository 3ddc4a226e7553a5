"""Exception types shared across the package."""


class LatentDebateError(Exception):
    """Base class for every error raised by this package."""


class RangeError(LatentDebateError):
    """A numeric value lies outside its documented domain."""


class CycleError(LatentDebateError):
    """The link graph contains a cycle (self-links count as 1-cycles)."""


class DuplicateIdError(LatentDebateError):
    """Two arguments share one id."""


class DuplicateLinkError(LatentDebateError):
    """The same (source, target) link appears more than once."""


class UnknownIdError(LatentDebateError):
    """A link endpoint does not name any argument."""


class MissingParentStrength(LatentDebateError):
    """Energy was requested before every parent had a final strength."""


class SchemaError(LatentDebateError):
    """A document is missing a field or a field has the wrong type."""


class ShapeError(LatentDebateError):
    """Matrix dimensions disagree with the declared token/layer counts."""


class CorpusError(LatentDebateError):
    """A JSON-lines corpus failed to parse; the message carries the line number."""


class LengthMismatch(LatentDebateError):
    """Two parallel sequences differ in length."""


class EmptyInput(LatentDebateError):
    """An operation that needs at least one element received none."""


class TooFewLayers(LatentDebateError):
    """Layer regions need at least three layers."""


class EmptyRegion(LatentDebateError):
    """A layer region contains no arguments."""


class TooFewSamples(LatentDebateError):
    """Not enough feature vectors to split into train and test."""


class SingleClassError(LatentDebateError):
    """Both label classes are required but only one is present."""


class DimensionError(LatentDebateError):
    """A feature vector has the wrong number of entries."""


class TooManyFeatures(LatentDebateError):
    """Exact coalition enumeration is limited to 20 features."""


class EmptyBackground(LatentDebateError):
    """Attribution needs a non-empty background sample."""
