"""Second-order gradient boosting with depth-limited regression trees.

Logistic loss, leaf weights -G/(H + l2), split gain by the usual
second-order criterion.  Per-tree row and feature subsampling run off the
package's SplitMix64 stream; sampled indices are used in ascending order,
so full sampling (ratio 1.0) is seed-independent bit for bit.  Trees store
raw leaf weights; prediction scales their sum by the learning rate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Any, Sequence

import numpy as np

from ..errors import (
    DimensionError,
    SchemaError,
    SingleClassError,
    TooFewSamples,
)
from ..features import FeatureVector
from ..rng import SplitMix64


@dataclass(frozen=True)
class DetectorConfig:
    num_trees: int = 100
    max_depth: int = 2
    learning_rate: float = 0.03
    subsample: float = 0.8
    colsample_per_tree: float = 0.8
    seed: int = 42
    l2_reg: float = 1.0
    train_fraction: float = 0.5

    def __post_init__(self) -> None:
        if self.num_trees < 0:
            raise ValueError("num_trees must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")
        if not 0.0 < self.subsample <= 1.0:
            raise ValueError("subsample must be in (0, 1]")
        if not 0.0 < self.colsample_per_tree <= 1.0:
            raise ValueError("colsample_per_tree must be in (0, 1]")
        if self.l2_reg < 0.0:
            raise ValueError("l2_reg must be >= 0")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be in (0, 1)")

    def to_dict(self) -> dict[str, Any]:
        return {
            "num_trees": self.num_trees,
            "max_depth": self.max_depth,
            "learning_rate": self.learning_rate,
            "subsample": self.subsample,
            "colsample_per_tree": self.colsample_per_tree,
            "seed": self.seed,
            "l2_reg": self.l2_reg,
            "train_fraction": self.train_fraction,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "DetectorConfig":
        unknown = sorted(set(raw) - set(cls().to_dict()))
        if unknown:
            raise SchemaError(f"unknown detector config keys: {unknown}")
        return replace(cls(), **raw)


@dataclass(frozen=True)
class Leaf:
    value: float


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: "Node"
    right: "Node"


Node = Leaf | Split


def eval_node(node: Node, x: Sequence[float]) -> float:
    """Route one input through a tree; x[feature] < threshold goes left."""
    while isinstance(node, Split):
        node = node.left if x[node.feature] < node.threshold else node.right
    return node.value


def eval_node_batch(node: Node, X: np.ndarray) -> np.ndarray:
    if isinstance(node, Leaf):
        return np.full(X.shape[0], node.value)
    go_left = X[:, node.feature] < node.threshold
    return np.where(go_left, eval_node_batch(node.left, X), eval_node_batch(node.right, X))


def node_features(node: Node) -> set[int]:
    """Distinct feature indices a tree actually splits on."""
    if isinstance(node, Leaf):
        return set()
    return {node.feature} | node_features(node.left) | node_features(node.right)


def _node_to_dict(node: Node) -> dict[str, Any]:
    if isinstance(node, Leaf):
        return {"value": node.value}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(raw: dict[str, Any]) -> Node:
    if "value" in raw:
        return Leaf(value=float(raw["value"]))
    return Split(
        feature=int(raw["feature"]),
        threshold=float(raw["threshold"]),
        left=_node_from_dict(raw["left"]),
        right=_node_from_dict(raw["right"]),
    )


def sigmoid(margin: float) -> float:
    """Numerically stable logistic function."""
    if margin >= 0:
        return 1.0 / (1.0 + math.exp(-margin))
    e = math.exp(margin)
    return e / (1.0 + e)


def _sigmoid_array(margins: np.ndarray) -> np.ndarray:
    out = np.empty_like(margins)
    positive = margins >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-margins[positive]))
    e = np.exp(margins[~positive])
    out[~positive] = e / (1.0 + e)
    return out


@dataclass(frozen=True)
class DetectorModel:
    """A trained boosted ensemble; immutable and JSON-serializable."""

    base_score: float
    trees: tuple[Node, ...]
    config: DetectorConfig
    num_features: int

    def margins(self, X: np.ndarray) -> np.ndarray:
        """Raw log-odds for a (n, num_features) matrix."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.num_features:
            raise DimensionError(
                f"expected (n, {self.num_features}) inputs, got {X.shape}"
            )
        total = np.full(X.shape[0], self.base_score)
        for tree in self.trees:
            total += self.config.learning_rate * eval_node_batch(tree, X)
        return total

    def margin(self, x: Sequence[float]) -> float:
        """Raw log-odds for a single feature vector."""
        x = _as_features(x, self.num_features)
        total = self.base_score
        for tree in self.trees:
            total += self.config.learning_rate * eval_node(tree, x)
        return total

    def predict_proba(self, x: Sequence[float]) -> float:
        """Probability of the positive (hallucination) class, in (0, 1)."""
        return sigmoid(self.margin(x))

    def to_json(self) -> str:
        doc = {
            "config": self.config.to_dict(),
            "num_features": self.num_features,
            "base_score": self.base_score,
            "trees": [_node_to_dict(t) for t in self.trees],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "DetectorModel":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"model document is not valid JSON: {exc}") from exc
        try:
            return cls(
                base_score=float(doc["base_score"]),
                trees=tuple(_node_from_dict(t) for t in doc["trees"]),
                config=DetectorConfig.from_dict(doc["config"]),
                num_features=int(doc["num_features"]),
            )
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed model document: {exc}") from exc


def _as_features(x: Sequence[float] | FeatureVector, expected: int) -> Sequence[float]:
    values = x.features if isinstance(x, FeatureVector) else x
    if len(values) != expected:
        raise DimensionError(f"expected {expected} features, got {len(values)}")
    return values


def split_dataset(
    vectors: Sequence[FeatureVector], config: DetectorConfig
) -> tuple[list[FeatureVector], list[FeatureVector]]:
    """Seeded shuffle, then floor(train_fraction * n) rows for training."""
    if len(vectors) < 4:
        raise TooFewSamples(f"need at least 4 vectors to split, got {len(vectors)}")
    indices = list(range(len(vectors)))
    SplitMix64(config.seed).shuffle(indices)
    n_train = int(config.train_fraction * len(vectors))
    train = [vectors[i] for i in indices[:n_train]]
    test = [vectors[i] for i in indices[n_train:]]
    return train, test


def _best_split(
    X: np.ndarray, g: np.ndarray, h: np.ndarray, columns: Sequence[int], l2: float
) -> tuple[int, float] | None:
    """Highest-gain (feature, threshold) over the given columns, or None.

    Ties keep the earliest column; candidate thresholds are midpoints of
    consecutive distinct values under a stable sort.
    """
    if len(g) < 2:
        return None
    G, H = float(g.sum()), float(h.sum())
    parent = G * G / (H + l2)
    best_gain = 0.0
    best: tuple[int, float] | None = None
    for feature in columns:
        values = X[:, feature]
        order = np.argsort(values, kind="stable")
        sv = values[order]
        boundary = sv[:-1] < sv[1:]
        if not boundary.any():
            continue
        cg = np.cumsum(g[order])[:-1]
        ch = np.cumsum(h[order])[:-1]
        gains = 0.5 * (
            cg * cg / (ch + l2) + (G - cg) ** 2 / (H - ch + l2) - parent
        )
        gains[~boundary] = -np.inf
        pos = int(np.argmax(gains))
        if gains[pos] > best_gain:
            best_gain = float(gains[pos])
            best = (feature, float((sv[pos] + sv[pos + 1]) / 2.0))
    return best


def _grow(
    X: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    columns: Sequence[int],
    depth: int,
    config: DetectorConfig,
) -> Node:
    G, H = float(g.sum()), float(h.sum())
    if depth >= config.max_depth:
        return Leaf(-G / (H + config.l2_reg))
    found = _best_split(X, g, h, columns, config.l2_reg)
    if found is None:
        return Leaf(-G / (H + config.l2_reg))
    feature, threshold = found
    go_left = X[:, feature] < threshold
    return Split(
        feature=feature,
        threshold=threshold,
        left=_grow(X[go_left], g[go_left], h[go_left], columns, depth + 1, config),
        right=_grow(X[~go_left], g[~go_left], h[~go_left], columns, depth + 1, config),
    )


def train(vectors: Sequence[FeatureVector], config: DetectorConfig) -> DetectorModel:
    """Fit the boosted ensemble on labelled feature vectors.

    Rejects single-class inputs.  A boosting round whose root finds no
    positive-gain split contributes a zero-value stump.
    """
    if not vectors:
        raise TooFewSamples("training set is empty")
    X = np.array([v.features for v in vectors], dtype=float)
    y = np.array([v.label for v in vectors], dtype=float)
    if y.min() == y.max():
        raise SingleClassError("training set contains a single class")

    n, num_features = X.shape
    prevalence = float(y.mean())
    base_score = math.log(prevalence / (1.0 - prevalence))
    margins = np.full(n, base_score)
    rng = SplitMix64(config.seed)
    trees: list[Node] = []
    for _ in range(config.num_trees):
        rows = rng.sample_sorted(n, max(1, int(config.subsample * n)))
        cols = rng.sample_sorted(
            num_features, max(1, int(config.colsample_per_tree * num_features))
        )
        p = _sigmoid_array(margins[rows])
        g = p - y[rows]
        h = p * (1.0 - p)
        Xs = X[rows]
        found = _best_split(Xs, g, h, cols, config.l2_reg)
        if found is None:
            tree: Node = Leaf(0.0)  # degenerate round: no positive-gain root split
        else:
            feature, threshold = found
            go_left = Xs[:, feature] < threshold
            tree = Split(
                feature=feature,
                threshold=threshold,
                left=_grow(Xs[go_left], g[go_left], h[go_left], cols, 1, config),
                right=_grow(Xs[~go_left], g[~go_left], h[~go_left], cols, 1, config),
            )
        trees.append(tree)
        margins += config.learning_rate * eval_node_batch(tree, X)

    return DetectorModel(
        base_score=base_score,
        trees=tuple(trees),
        config=config,
        num_features=num_features,
    )


def training_logloss(model: DetectorModel, vectors: Sequence[FeatureVector]) -> float:
    """Mean logistic loss of the model on a labelled set."""
    X = np.array([v.features for v in vectors], dtype=float)
    y = np.array([v.label for v in vectors], dtype=float)
    p = np.clip(_sigmoid_array(model.margins(X)), 1e-15, 1.0 - 1e-15)
    return float(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)).mean())
