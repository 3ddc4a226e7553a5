"""Exception types for the extractor."""


class ExtractorError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(ExtractorError):
    """A claims or QA document is missing a field or has a wrong type."""


class NoAlternativeAnswer(ExtractorError):
    """No distractor exists and the answer pool offers no alternative."""


class ModelLoadError(ExtractorError):
    """A model or tokenizer could not be loaded or is unusable for probing."""


class TokenResolutionError(ExtractorError):
    """The True and False labels resolve to the same vocabulary token."""


class ContextOverflow(ExtractorError):
    """The rendered prompt does not fit the model's context window."""
