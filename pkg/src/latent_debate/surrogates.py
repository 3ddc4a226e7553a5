"""Surrogate verdicts: propagation-free baselines plus the debate verdict.

Each surrogate reduces a record's grid of initial strengths to one signed
score in [-1, 1]; the label is the score's sign (exact zero reads True,
matching the global convention).  Baselines look only at initial
strengths; the debate surrogate propagates them through the grid first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import EmptyInput, LengthMismatch
from .grid import Topology, decide, evaluate_record, initial_strength, top_right_argument
from .qbaf import is_positive
from .records import DebateRecord
from .rng import SplitMix64


class Method(Enum):
    RANDOM = "Random"
    AVERAGE = "Average"
    MAJORITY = "Majority"
    TOP_RIGHT = "TopRight"
    LATENT_DEBATE = "LatentDebate"


METHOD_ORDER = (
    Method.RANDOM,
    Method.AVERAGE,
    Method.MAJORITY,
    Method.TOP_RIGHT,
    Method.LATENT_DEBATE,
)


@dataclass(frozen=True)
class SurrogateVerdict:
    method: Method
    label: bool
    score: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [-1, 1]")
        if self.label is not is_positive(self.score):
            raise ValueError("label must be the sign of score")


def _cell_taus(record: DebateRecord) -> list[float]:
    """Initial strengths of every cell, layer-major."""
    return [initial_strength(p) for row in record.p_true for p in row]


def _verdict(method: Method, score: float) -> SurrogateVerdict:
    return SurrogateVerdict(method=method, label=is_positive(score), score=score)


def random_baseline(record: DebateRecord, seed: int) -> SurrogateVerdict:
    """Sign of one uniformly drawn cell (seeded SplitMix64 draw)."""
    taus = _cell_taus(record)
    pick = SplitMix64(seed).randrange(len(taus))
    return _verdict(Method.RANDOM, taus[pick])


def average_baseline(record: DebateRecord) -> SurrogateVerdict:
    """Sign of the arithmetic mean over all cells."""
    taus = _cell_taus(record)
    return _verdict(Method.AVERAGE, sum(taus) / len(taus))


def majority_baseline(record: DebateRecord) -> SurrogateVerdict:
    """Majority vote over cell polarities; score is the signed vote margin."""
    taus = _cell_taus(record)
    positives = sum(1 for t in taus if is_positive(t))
    negatives = len(taus) - positives
    return _verdict(Method.MAJORITY, (positives - negatives) / len(taus))


def top_right_baseline(record: DebateRecord) -> SurrogateVerdict:
    """Sign of the top-right cell's initial strength, no propagation."""
    return _verdict(Method.TOP_RIGHT, initial_strength(record.p_true[-1][-1]))


def latent_debate_verdict(
    record: DebateRecord,
    topology: Topology = Topology.SIMPLE,
    use_weights: bool = True,
) -> SurrogateVerdict:
    """Propagated verdict: final strength of the top-right grid cell."""
    qbaf, strengths = evaluate_record(record, topology, use_weights)
    score = strengths.sigma[top_right_argument(qbaf)]
    verdict = _verdict(Method.LATENT_DEBATE, score)
    assert verdict.label is decide(strengths, qbaf)
    return verdict


def all_verdicts(
    record: DebateRecord,
    seed: int,
    topology: Topology = Topology.SIMPLE,
    use_weights: bool = True,
) -> tuple[SurrogateVerdict, ...]:
    """All five surrogate verdicts in the fixed method order."""
    return (
        random_baseline(record, seed),
        average_baseline(record),
        majority_baseline(record),
        top_right_baseline(record),
        latent_debate_verdict(record, topology, use_weights),
    )


def consistency(surrogate_labels: Sequence[bool], model_predictions: Sequence[bool]) -> float:
    """Fraction of positions where the two label lists agree."""
    if len(surrogate_labels) != len(model_predictions):
        raise LengthMismatch(
            f"{len(surrogate_labels)} surrogate labels vs "
            f"{len(model_predictions)} model predictions"
        )
    if not surrogate_labels:
        raise EmptyInput("consistency needs at least one pair of labels")
    agree = sum(1 for s, m in zip(surrogate_labels, model_predictions) if s == m)
    return agree / len(surrogate_labels)


def format_consistency_csv(entries: Iterable[tuple[Method, int, float]]) -> str:
    """Consistency summary as CSV: method,n,consistency (4-decimal fraction)."""
    lines = ["method,n,consistency"]
    for method, n, value in entries:
        lines.append(f"{method.value},{n},{value:.4f}")
    return "\n".join(lines) + "\n"
