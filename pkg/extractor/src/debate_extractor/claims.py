"""Claim items and the QA-to-claim conversion.

Open-ended QA items become binary claims by concatenating the question
with either its correct answer (a True claim) or a wrong answer (a False
claim).  The wrong answer is the item's first distractor when present,
otherwise a seeded draw from the corpus answer pool.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Mapping, Sequence

from .errors import NoAlternativeAnswer, SchemaError
from .rng import SplitMix64


@dataclass(frozen=True)
class ClaimItem:
    claim: str
    gold_label: bool
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.claim.strip():
            raise SchemaError("claim text must be non-empty")


@dataclass(frozen=True)
class QaItem:
    question: str
    answer: str
    distractors: tuple[str, ...] = ()


def _require_str(raw: dict, key: str, context: str) -> str:
    value = raw.get(key)
    if not isinstance(value, str):
        raise SchemaError(f"{context}: {key!r} must be a string")
    return value


def parse_claim(document: str) -> ClaimItem:
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"claim line is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("claim line must be a JSON object")
    label = _require_str(raw, "gold_label", "claim")
    if label not in ("True", "False"):
        raise SchemaError(f'gold_label must be "True" or "False", got {label!r}')
    meta = raw.get("meta", {})
    if not isinstance(meta, dict):
        raise SchemaError("claim meta must be an object")
    return ClaimItem(
        claim=_require_str(raw, "claim", "claim"),
        gold_label=label == "True",
        meta=meta,
    )


def claim_to_json(item: ClaimItem) -> str:
    return json.dumps(
        {
            "claim": item.claim,
            "gold_label": "True" if item.gold_label else "False",
            "meta": dict(item.meta),
        }
    )


def load_claims(path: str | Path) -> list[ClaimItem]:
    items = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            items.append(parse_claim(line))
        except SchemaError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    return items


def parse_qa(document: str) -> QaItem:
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"QA line is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("QA line must be a JSON object")
    distractors = raw.get("distractors", [])
    if not isinstance(distractors, list) or not all(isinstance(d, str) for d in distractors):
        raise SchemaError("distractors must be an array of strings")
    return QaItem(
        question=_require_str(raw, "question", "QA"),
        answer=_require_str(raw, "answer", "QA"),
        distractors=tuple(distractors),
    )


def load_qa(path: str | Path) -> list[QaItem]:
    items = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            items.append(parse_qa(line))
        except SchemaError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    return items


def convert_qa_to_claims(
    question: str,
    answer: str,
    distractors: Sequence[str],
    seed: int,
    answer_pool: Sequence[str] = (),
) -> list[ClaimItem]:
    """One True claim plus one False claim for a QA item.

    The False claim uses the first distractor; without distractors an
    alternative answer is drawn (seeded) from `answer_pool` minus the
    correct answer.  Raises NoAlternativeAnswer when neither exists.
    """
    true_claim = ClaimItem(
        claim=f"{question} {answer}",
        gold_label=True,
        meta={"question": question, "answer": answer},
    )
    if distractors:
        wrong = distractors[0]
    else:
        alternatives = sorted(set(answer_pool) - {answer})
        if not alternatives:
            raise NoAlternativeAnswer(
                f"no distractor and no alternative answer for {question!r}"
            )
        wrong = alternatives[SplitMix64(seed).randrange(len(alternatives))]
    false_claim = ClaimItem(
        claim=f"{question} {wrong}",
        gold_label=False,
        meta={"question": question, "answer": answer, "distractor": wrong},
    )
    return [true_claim, false_claim]


def convert_qa_corpus(items: Sequence[QaItem], seed: int) -> Iterator[list[ClaimItem]]:
    """Claims per QA item, with the whole corpus' answers as the fallback pool."""
    pool = tuple(item.answer for item in items)
    for index, item in enumerate(items):
        yield convert_qa_to_claims(
            item.question, item.answer, item.distractors, seed + index, pool
        )
