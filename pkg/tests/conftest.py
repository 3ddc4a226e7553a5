"""Shared builders for test records and corpora."""

import json

from latent_debate.records import DebateRecord, Token
from latent_debate.rng import SplitMix64


def make_record(
    p_true,
    weights=None,
    claim="test claim",
    gold_label=True,
    model_prediction=True,
    metadata=None,
):
    """Record from a [layer][token] probability matrix; weights default to 1."""
    num_tokens = len(p_true[0])
    if weights is None:
        weights = [1.0] * num_tokens
    tokens = tuple(Token(f"tok{i}", w) for i, w in enumerate(weights, start=1))
    return DebateRecord(
        claim=claim,
        gold_label=gold_label,
        model_prediction=model_prediction,
        tokens=tokens,
        num_layers=len(p_true),
        p_true=tuple(tuple(float(p) for p in row) for row in p_true),
        metadata=dict(metadata or {}),
    )


def random_record(rng: SplitMix64, max_tokens=5, max_layers=6, min_layers=1):
    num_tokens = 1 + rng.randrange(max_tokens)
    num_layers = min_layers + rng.randrange(max_layers - min_layers + 1)
    p_true = [[rng.random() for _ in range(num_tokens)] for _ in range(num_layers)]
    weights = [rng.random() for _ in range(num_tokens)]
    return make_record(
        p_true,
        weights,
        gold_label=rng.random() < 0.5,
        model_prediction=rng.random() < 0.5,
    )


def record_document(record):
    """JSON document matching the record schema."""
    return json.dumps(
        {
            "schema_version": 1,
            "claim": record.claim,
            "gold_label": "True" if record.gold_label else "False",
            "model_prediction": "True" if record.model_prediction else "False",
            "tokens": [{"text": t.text, "weight": t.weight} for t in record.tokens],
            "num_layers": record.num_layers,
            "p_true": [list(row) for row in record.p_true],
            "metadata": dict(record.metadata),
        }
    )


def write_corpus(path, records):
    path.write_text("".join(record_document(r) + "\n" for r in records), encoding="utf-8")
