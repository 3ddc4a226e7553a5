"""Layer probes: truth probabilities per (layer, thinking step) from one forward pass.

Each of the last K prompt positions ("thinking steps") is probed at every
transformer layer except the final one: the layer's residual-stream output
goes through the model's final normalization and the unembedding rows of
the resolved True/False tokens, and a two-way softmax yields P(True).  The
model's own prediction is the larger of the two logits at the last
position of the output layer.  No sampling anywhere; extraction is a pure
function of (model, prompt, config).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import torch

from .claims import ClaimItem
from .errors import ContextOverflow, ModelLoadError, TokenResolutionError
from .similarity import DEFAULT_CROSS_ENCODER, SimilarityScorer
from .weights import assign_to_offsets, token_weights, word_spans

logger = logging.getLogger(__name__)

DEFAULT_TEMPLATE = "{claim}\nThe statement is True or False:"

# final-normalization attribute names across common decoder families
_FINAL_NORM_ATTRS = ("ln_f", "norm", "final_layer_norm", "final_layernorm", "norm_f", "layer_norm")


@dataclass(frozen=True)
class ExtractionConfig:
    model: str
    template: str = DEFAULT_TEMPLATE
    k: int | None = None
    true_text: str = "True"
    false_text: str = "False"
    weights: str = "cross-encoder"
    cross_encoder_model: str = DEFAULT_CROSS_ENCODER
    device: str = "cpu"
    norm_attribute: str | None = None

    def __post_init__(self) -> None:
        if "{claim}" not in self.template:
            raise ValueError("template must contain a {claim} slot")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if self.weights not in ("cross-encoder", "uniform"):
            raise ValueError(f"unknown weights mode {self.weights!r}")


def resolve_truth_token_ids(tokenizer, true_text: str, false_text: str) -> tuple[int, int]:
    """First token ids for the True/False labels.

    Prefers the leading-space variants; falls back to the bare texts when
    those collide (e.g. tokenizers with a standalone space token).
    """
    for prefix in (" ", ""):
        true_ids = tokenizer.encode(prefix + true_text, add_special_tokens=False)
        false_ids = tokenizer.encode(prefix + false_text, add_special_tokens=False)
        if true_ids and false_ids and true_ids[0] != false_ids[0]:
            return true_ids[0], false_ids[0]
    raise TokenResolutionError(
        f"{true_text!r} and {false_text!r} resolve to the same token id"
    )


def _find_final_norm(model, override: str | None):
    base = getattr(model, "base_model", model)
    names = (override,) if override else _FINAL_NORM_ATTRS
    for name in names:
        if name and hasattr(base, name):
            return getattr(base, name)
    raise ModelLoadError(
        f"cannot locate the final normalization module (tried {names})"
    )


def _context_limit(model) -> int | None:
    for attr in ("max_position_embeddings", "n_positions"):
        value = getattr(model.config, attr, None)
        if isinstance(value, int) and value > 0:
            return value
    return None


class Probe:
    """A loaded model plus everything needed to emit records."""

    def __init__(self, config: ExtractionConfig):
        from transformers import AutoModelForCausalLM, AutoTokenizer

        self.config = config
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(config.model)
            self.model = AutoModelForCausalLM.from_pretrained(config.model)
        except Exception as exc:
            raise ModelLoadError(f"cannot load model {config.model!r}: {exc}") from exc
        self.model.eval()
        self.model.to(config.device)
        num_layers = getattr(self.model.config, "num_hidden_layers", None) or getattr(
            self.model.config, "n_layer", 0
        )
        if num_layers < 2:
            raise ModelLoadError("probing needs a model with at least 2 layers")
        self.final_norm = _find_final_norm(self.model, config.norm_attribute)
        self.unembedding = self.model.get_output_embeddings()
        if self.unembedding is None:
            raise ModelLoadError("model exposes no output embeddings to project with")
        self.true_id, self.false_id = resolve_truth_token_ids(
            self.tokenizer, config.true_text, config.false_text
        )
        suffix = config.template.split("{claim}", 1)[1]
        suffix_ids = self.tokenizer.encode(suffix, add_special_tokens=False)
        # default thinking steps: the auxiliary suffix plus the claim's last token
        self.default_k = len(suffix_ids) + 1

    def _truth_logits(self, hidden: torch.Tensor) -> torch.Tensor:
        """(..., d) hidden states -> (..., 2) logits for [True, False]."""
        normed = self.final_norm(hidden)
        weight = self.unembedding.weight[[self.true_id, self.false_id]]
        logits = normed @ weight.T
        bias = getattr(self.unembedding, "bias", None)
        if bias is not None:
            logits = logits + bias[[self.true_id, self.false_id]]
        return logits

    def extract_record(
        self, claim: ClaimItem, scorer: SimilarityScorer | None = None
    ) -> dict[str, Any]:
        """One record document (schema_version 1) for a claim."""
        config = self.config
        prompt = config.template.format(claim=claim.claim)
        encoded = self.tokenizer(prompt, return_offsets_mapping=True)
        input_ids = encoded["input_ids"]
        offsets = encoded["offset_mapping"]
        limit = _context_limit(self.model)
        if limit is not None and len(input_ids) > limit:
            raise ContextOverflow(
                f"prompt needs {len(input_ids)} positions, model allows {limit}"
            )
        k = min(config.k or self.default_k, len(input_ids))

        with torch.no_grad():
            output = self.model(
                torch.tensor([input_ids], device=config.device),
                output_hidden_states=True,
            )
        hidden_states = output.hidden_states  # embeddings + one entry per layer
        total_layers = len(hidden_states) - 1
        probe_layers = total_layers - 1  # final output layer excluded

        p_true: list[list[float]] = []
        with torch.no_grad():
            for layer in range(1, probe_layers + 1):
                states = hidden_states[layer][0, -k:, :]
                probs = torch.softmax(self._truth_logits(states), dim=-1)[:, 0]
                p_true.append([float(p) for p in probs])
            final_logits = output.logits[0, -1]
            model_prediction = bool(
                float(final_logits[self.true_id]) >= float(final_logits[self.false_id])
            )

        step_ids = input_ids[-k:]
        step_offsets = offsets[-k:]
        texts = [self.tokenizer.decode([token_id]) for token_id in step_ids]
        if config.weights == "uniform" or scorer is None:
            weights = [1.0] * k
        else:
            per_word = token_weights(prompt, scorer)
            weights = assign_to_offsets(step_offsets, word_spans(prompt), per_word)

        return {
            "schema_version": 1,
            "claim": claim.claim,
            "gold_label": "True" if claim.gold_label else "False",
            "model_prediction": "True" if model_prediction else "False",
            "tokens": [
                {"text": text, "weight": weight} for text, weight in zip(texts, weights)
            ],
            "num_layers": probe_layers,
            "p_true": p_true,
            "metadata": {
                "model": config.model,
                "template": config.template,
                "k": k,
                "weights": config.weights if scorer is not None else "uniform",
                "model_layers": total_layers,
            },
        }
