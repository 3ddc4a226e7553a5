"""Record extraction: logit-lens truth probabilities from a causal LM."""

from .claims import ClaimItem, QaItem, convert_qa_to_claims, load_claims, load_qa
from .corpus import ExtractionSummary, extract_corpus
from .errors import (
    ContextOverflow,
    ExtractorError,
    ModelLoadError,
    NoAlternativeAnswer,
    SchemaError,
    TokenResolutionError,
)
from .probe import DEFAULT_TEMPLATE, ExtractionConfig, Probe, resolve_truth_token_ids
from .similarity import DEFAULT_CROSS_ENCODER, CrossEncoderScorer, SimilarityScorer
from .weights import token_weights

__version__ = "0.1.0"
