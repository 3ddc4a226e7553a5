"""Debate-pattern features per layer region, for the hallucination detector.

The probe layers are split into lower/middle/upper thirds; each region
contributes five statistics (attack-edge count, mean and population
variance of initial and final strengths), giving 15 features per record.
The target label marks records where the model's prediction disagreed
with the gold label.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyInput, EmptyRegion, SchemaError, TooFewLayers
from .grid import argument_layer
from .qbaf import EdgeLabel, Qbaf, StrengthMap
from .records import DebateRecord

REGION_NAMES = ("lower", "middle", "upper")
STATISTIC_NAMES = ("NumAtk", "AvgInit", "AvgFin", "VarInit", "VarFin")
FEATURE_NAMES = tuple(f"{region}_{stat}" for region in REGION_NAMES for stat in STATISTIC_NAMES)
CSV_HEADER = ",".join(FEATURE_NAMES + ("label",))


@dataclass(frozen=True)
class RegionPartition:
    """Half-open 1-based layer ranges covering 1..num_layers."""

    lower: range
    middle: range
    upper: range

    def region_index(self, layer: int) -> int:
        if layer in self.lower:
            return 0
        if layer in self.middle:
            return 1
        if layer in self.upper:
            return 2
        raise ValueError(f"layer {layer} is outside the partition")


def region_partition(num_layers: int) -> RegionPartition:
    """Split 1..num_layers into thirds; remainder layers fall to upper."""
    if num_layers < 3:
        raise TooFewLayers(f"need at least 3 layers for regions, got {num_layers}")
    first = num_layers // 3
    second = (2 * num_layers) // 3
    return RegionPartition(
        lower=range(1, first + 1),
        middle=range(first + 1, second + 1),
        upper=range(second + 1, num_layers + 1),
    )


@dataclass(frozen=True)
class FeatureVector:
    """The 15 region features (ordered per FEATURE_NAMES) plus the 0/1 label."""

    features: tuple[float, ...]
    label: int

    def __post_init__(self) -> None:
        if len(self.features) != len(FEATURE_NAMES):
            raise ValueError(
                f"expected {len(FEATURE_NAMES)} features, got {len(self.features)}"
            )
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label}")

    def value(self, name: str) -> float:
        return self.features[FEATURE_NAMES.index(name)]


def _mean(values: Sequence[float]) -> float:
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def _population_variance(values: Sequence[float], mean: float) -> float:
    total = 0.0
    for v in values:
        total += (v - mean) ** 2
    return total / len(values)


def extract_features(
    qbaf: Qbaf,
    strengths: StrengthMap,
    partition: RegionPartition,
    record: DebateRecord,
) -> FeatureVector:
    """Region statistics over every argument whose layer falls in the region.

    Attack edges count toward the region of the link's target, so a
    vertical link crossing a boundary belongs to its upper endpoint.
    """
    taus: list[list[float]] = [[], [], []]
    sigmas: list[list[float]] = [[], [], []]
    for arg in qbaf.arguments:
        region = partition.region_index(argument_layer(arg.id))
        taus[region].append(arg.tau)
        sigmas[region].append(strengths.sigma[arg.id])

    attacks = [0, 0, 0]
    for link, label in strengths.edge_labels.items():
        if label is EdgeLabel.ATTACK:
            attacks[partition.region_index(argument_layer(link[1]))] += 1

    values: list[float] = []
    for region, name in enumerate(REGION_NAMES):
        if not taus[region]:
            raise EmptyRegion(f"region {name!r} contains no arguments")
        avg_init = _mean(taus[region])
        avg_fin = _mean(sigmas[region])
        values.extend(
            [
                float(attacks[region]),
                avg_init,
                avg_fin,
                _population_variance(taus[region], avg_init),
                _population_variance(sigmas[region], avg_fin),
            ]
        )
    label = int(record.model_prediction != record.gold_label)
    return FeatureVector(features=tuple(values), label=label)


def _format_cell(name: str, value: float) -> str:
    if name.endswith("NumAtk"):
        return str(int(value))
    return repr(value)


def export_table(vectors: Sequence[FeatureVector]) -> str:
    """Feature vectors as CSV with the fixed 16-column header."""
    if not vectors:
        raise EmptyInput("no feature vectors to export")
    lines = [CSV_HEADER]
    for vector in vectors:
        cells = [_format_cell(name, v) for name, v in zip(FEATURE_NAMES, vector.features)]
        cells.append(str(vector.label))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def load_table(text: str) -> list[FeatureVector]:
    """Parse a CSV produced by export_table."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise EmptyInput("feature table is empty")
    if ",".join(rows[0]) != CSV_HEADER:
        raise SchemaError(f"unexpected feature CSV header: {','.join(rows[0])!r}")
    vectors = []
    for row in rows[1:]:
        if len(row) != len(FEATURE_NAMES) + 1:
            raise SchemaError(f"feature row has {len(row)} cells, expected {len(FEATURE_NAMES) + 1}")
        vectors.append(
            FeatureVector(
                features=tuple(float(cell) for cell in row[:-1]),
                label=int(row[-1]),
            )
        )
    return vectors


def feature_matrix(vectors: Iterable[FeatureVector]) -> list[list[float]]:
    """Plain row-major feature values, used by the detector."""
    return [list(v.features) for v in vectors]
