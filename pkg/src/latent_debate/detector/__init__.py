"""Hallucination detector: boosted trees, AUROC, and Shapley attributions."""

from .boosting import (
    DetectorConfig,
    DetectorModel,
    Leaf,
    Node,
    Split,
    sigmoid,
    split_dataset,
    train,
    training_logloss,
)
from .metrics import auroc
from .shapley import (
    Attribution,
    importance_report,
    mean_abs_attributions,
    sample_background,
    shapley,
)

__all__ = [
    "Attribution",
    "DetectorConfig",
    "DetectorModel",
    "Leaf",
    "Node",
    "Split",
    "auroc",
    "importance_report",
    "mean_abs_attributions",
    "sample_background",
    "shapley",
    "sigmoid",
    "split_dataset",
    "train",
    "training_logloss",
]
