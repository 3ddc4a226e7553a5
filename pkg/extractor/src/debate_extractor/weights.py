"""Token-wise weights: how much each word's removal shifts the sentence meaning.

weight(t) = clamp(1 - sim(original, original-without-t), 0, 1).  Weights
are computed per whitespace word of the rendered text and assigned to
subword tokens by character overlap, so every subword of one word shares
its weight.
"""

from __future__ import annotations

import re
from typing import Sequence

from .similarity import SimilarityScorer

_WORD = re.compile(r"\S+")


def word_spans(sentence: str) -> list[tuple[int, int]]:
    """Character span of each whitespace-delimited word."""
    return [match.span() for match in _WORD.finditer(sentence)]


def token_weights(sentence: str, scorer: SimilarityScorer) -> list[float]:
    """One weight per whitespace word of `sentence`, each in [0, 1]."""
    words = sentence.split()
    if not words:
        raise ValueError("sentence has no tokens to weight")
    variants = [" ".join(words[:i] + words[i + 1 :]) for i in range(len(words))]
    similarities = scorer.similarity([(sentence, variant) for variant in variants])
    return [min(max(1.0 - sim, 0.0), 1.0) for sim in similarities]


def assign_to_offsets(
    offsets: Sequence[tuple[int, int]],
    spans: Sequence[tuple[int, int]],
    weights: Sequence[float],
) -> list[float]:
    """Weight per token offset, by maximum character overlap with the words.

    Tokens overlapping no word (pure whitespace) get the neutral weight 1.0.
    """
    out = []
    for start, end in offsets:
        best_overlap = 0
        weight = 1.0
        for (w_start, w_end), w_weight in zip(spans, weights):
            overlap = min(end, w_end) - max(start, w_start)
            if overlap > best_overlap:
                best_overlap = overlap
                weight = w_weight
        out.append(weight)
    return out
