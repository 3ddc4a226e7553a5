"""Rank-based AUROC with average ranks for ties."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import EmptyInput, LengthMismatch, SingleClassError


def auroc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Probability that a random positive outranks a random negative.

    Tied scores receive their average rank, so each tied positive-negative
    pair counts one half.  Invariant under strictly monotone rescoring.
    """
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    if scores.shape != labels.shape:
        raise LengthMismatch(f"{scores.shape[0]} scores vs {labels.shape[0]} labels")
    if scores.size == 0:
        raise EmptyInput("auroc needs at least one score")
    n_pos = int((labels == 1).sum())
    n_neg = int((labels == 0).sum())
    if n_pos + n_neg != labels.size:
        raise ValueError("labels must be 0 or 1")
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("auroc needs both classes present")

    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    new_group = np.r_[True, sorted_scores[1:] != sorted_scores[:-1]]
    group = np.cumsum(new_group) - 1
    counts = np.bincount(group)
    ends = np.cumsum(counts).astype(float)
    average_rank = ends - (counts - 1) / 2.0  # mean of each tie group's 1-based ranks
    ranks = np.empty(scores.size)
    ranks[order] = average_rank[group]

    positive_rank_sum = float(ranks[labels == 1].sum())
    return (positive_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)
