"""Extraction records: the JSON contract between extractors and the grid builder.

A record carries one claim's per-layer, per-token probabilities of the
claim being true, the token weights, the model's own prediction and the
gold label.  Layer index 1 is the first transformer layer; the final
output layer is excluded, so `num_layers` counts L-1 probe layers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Mapping, NamedTuple

from .errors import CorpusError, RangeError, SchemaError, ShapeError

SCHEMA_VERSION = 1

_TOP_LEVEL_KEYS = (
    "schema_version",
    "claim",
    "gold_label",
    "model_prediction",
    "tokens",
    "num_layers",
    "p_true",
    "metadata",
)


class Token(NamedTuple):
    text: str
    weight: float


def parse_label(value: str) -> bool:
    if value == "True":
        return True
    if value == "False":
        return False
    raise SchemaError(f'label must be "True" or "False", got {value!r}')


def format_label(value: bool) -> str:
    return "True" if value else "False"


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


@dataclass(frozen=True)
class DebateRecord:
    """One claim's extraction, validated on construction."""

    claim: str
    gold_label: bool
    model_prediction: bool
    tokens: tuple[Token, ...]
    num_layers: int
    p_true: tuple[tuple[float, ...], ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.num_layers < 1:
            raise ShapeError(f"num_layers must be >= 1, got {self.num_layers}")
        if len(self.tokens) < 1:
            raise ShapeError("a record needs at least one token")
        if len(self.p_true) != self.num_layers:
            raise ShapeError(
                f"p_true has {len(self.p_true)} rows but num_layers = {self.num_layers}"
            )
        for l, row in enumerate(self.p_true, start=1):
            if len(row) != len(self.tokens):
                raise ShapeError(
                    f"p_true layer {l} has {len(row)} entries "
                    f"but the record has {len(self.tokens)} tokens"
                )
            for n, p in enumerate(row, start=1):
                if not 0.0 <= p <= 1.0:
                    raise RangeError(
                        f"p_true[{l}][{n}] = {p} is outside [0, 1]"
                    )
        for n, token in enumerate(self.tokens, start=1):
            if not 0.0 <= token.weight <= 1.0:
                raise RangeError(f"weight of token {n} is {token.weight}, outside [0, 1]")

    @property
    def num_tokens(self) -> int:
        return len(self.tokens)


def parse_record(document: bytes | str) -> DebateRecord:
    """Parse and validate one JSON record document."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("record document must be a JSON object")

    unknown = sorted(set(raw) - set(_TOP_LEVEL_KEYS))
    if unknown:
        raise SchemaError(f"unknown top-level keys: {unknown}")
    missing = sorted(set(_TOP_LEVEL_KEYS) - set(raw))
    if missing:
        raise SchemaError(f"missing top-level keys: {missing}")

    if raw["schema_version"] != SCHEMA_VERSION or isinstance(raw["schema_version"], bool):
        raise SchemaError(f"schema_version must be {SCHEMA_VERSION}, got {raw['schema_version']!r}")
    if not isinstance(raw["claim"], str):
        raise SchemaError("claim must be a string")
    for key in ("gold_label", "model_prediction"):
        if not isinstance(raw[key], str):
            raise SchemaError(f"{key} must be a string")
    if not isinstance(raw["tokens"], list):
        raise SchemaError("tokens must be an array")
    tokens = []
    for n, item in enumerate(raw["tokens"], start=1):
        if not isinstance(item, dict) or set(item) != {"text", "weight"}:
            raise SchemaError(f'token {n} must be an object with keys "text" and "weight"')
        if not isinstance(item["text"], str):
            raise SchemaError(f"text of token {n} must be a string")
        if not _is_number(item["weight"]):
            raise SchemaError(f"weight of token {n} must be a number")
        tokens.append(Token(item["text"], float(item["weight"])))
    if not isinstance(raw["num_layers"], int) or isinstance(raw["num_layers"], bool):
        raise SchemaError("num_layers must be an integer")
    if not isinstance(raw["p_true"], list):
        raise SchemaError("p_true must be an array of arrays")
    p_true = []
    for l, row in enumerate(raw["p_true"], start=1):
        if not isinstance(row, list):
            raise SchemaError(f"p_true layer {l} must be an array")
        for n, p in enumerate(row, start=1):
            if not _is_number(p):
                raise SchemaError(f"p_true[{l}][{n}] must be a number")
        p_true.append(tuple(float(p) for p in row))
    if not isinstance(raw["metadata"], dict):
        raise SchemaError("metadata must be an object")

    return DebateRecord(
        claim=raw["claim"],
        gold_label=parse_label(raw["gold_label"]),
        model_prediction=parse_label(raw["model_prediction"]),
        tokens=tuple(tokens),
        num_layers=raw["num_layers"],
        p_true=tuple(p_true),
        metadata=dict(raw["metadata"]),
    )


def record_to_dict(record: DebateRecord) -> dict[str, Any]:
    """Record as a JSON-ready dict with keys in schema order."""
    return {
        "schema_version": SCHEMA_VERSION,
        "claim": record.claim,
        "gold_label": format_label(record.gold_label),
        "model_prediction": format_label(record.model_prediction),
        "tokens": [{"text": t.text, "weight": t.weight} for t in record.tokens],
        "num_layers": record.num_layers,
        "p_true": [list(row) for row in record.p_true],
        "metadata": dict(record.metadata),
    }


def record_to_json(record: DebateRecord) -> str:
    return json.dumps(record_to_dict(record))


def iter_corpus(path: str | Path) -> Iterator[tuple[int, DebateRecord]]:
    """Yield (line_number, record) pairs from a JSON-lines corpus.

    Whitespace-only lines are skipped; any parse failure is re-raised as a
    CorpusError naming the file and 1-based line number.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, parse_record(line)
            except (SchemaError, ShapeError, RangeError) as exc:
                raise CorpusError(f"{path}:{lineno}: {exc}") from exc


def load_corpus(path: str | Path) -> list[DebateRecord]:
    return [record for _, record in iter_corpus(path)]
