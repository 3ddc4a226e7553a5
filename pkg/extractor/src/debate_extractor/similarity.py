"""Sentence-pair similarity backends for token weighting."""

from __future__ import annotations

from typing import Protocol, Sequence

from .errors import ModelLoadError

DEFAULT_CROSS_ENCODER = "cross-encoder/stsb-roberta-large"


class SimilarityScorer(Protocol):
    def similarity(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        """Semantic similarity per (original, modified) pair, nominally in [0, 1]."""
        ...


class CrossEncoderScorer:
    """Cross-encoder regression head scoring sentence pairs."""

    def __init__(self, model_name: str = DEFAULT_CROSS_ENCODER, device: str | None = None):
        try:
            from sentence_transformers import CrossEncoder
        except ImportError as exc:
            raise ModelLoadError(
                "sentence-transformers is required for cross-encoder weights"
            ) from exc
        try:
            self._model = CrossEncoder(model_name, device=device)
        except Exception as exc:
            raise ModelLoadError(f"cannot load cross-encoder {model_name!r}: {exc}") from exc
        self.model_name = model_name

    def similarity(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        if not pairs:
            return []
        return [float(score) for score in self._model.predict(list(pairs))]
