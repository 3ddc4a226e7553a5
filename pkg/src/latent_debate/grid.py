"""Token-by-layer debate grids: turning a record into an evaluable QBAF.

Every (layer, token) cell becomes one argument whose initial strength is
the affine image 2p - 1 of the cell's truth probability.  Within a layer,
arguments link left to right; the rightmost cells chain upward across
layers, and the top-right cell carries the verdict.
"""

from __future__ import annotations

import re
from enum import Enum

from .errors import RangeError
from .qbaf import Argument, Qbaf, StrengthMap, build_qbaf, evaluate, is_positive
from .records import DebateRecord


class Topology(Enum):
    """Grid wiring: adjacent-only horizontals, or all left-to-right pairs."""

    SIMPLE = "simple"
    QUADRATIC = "quadratic"


_ID_PATTERN = re.compile(r"^L(\d{3})T(\d{3})$")


def grid_argument_id(layer: int, token: int) -> str:
    """Cell id; zero-padded so id order equals (layer, token) order."""
    return f"L{layer:03d}T{token:03d}"


def argument_layer(arg_id: str) -> int:
    match = _ID_PATTERN.match(arg_id)
    if match is None:
        raise ValueError(f"{arg_id!r} is not a grid argument id")
    return int(match.group(1))


def argument_token(arg_id: str) -> int:
    match = _ID_PATTERN.match(arg_id)
    if match is None:
        raise ValueError(f"{arg_id!r} is not a grid argument id")
    return int(match.group(2))


def initial_strength(p: float) -> float:
    """Map a truth probability to [-1, 1]: 2p - 1, i.e. P(True) - P(False)."""
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"probability {p} is outside [0, 1]")
    return 2.0 * p - 1.0


def build_grid(
    record: DebateRecord,
    topology: Topology = Topology.SIMPLE,
    use_weights: bool = True,
) -> Qbaf:
    """Build the record's argument grid.

    One argument per (layer, token) cell, layer-major.  With `use_weights`
    off every argument gets weight 1.0 (the weight-free variant).  Simple
    topology links each cell to its right neighbour and chains the
    rightmost cells upward; quadratic topology instead links every cell to
    all later cells of its layer, keeping the same vertical chain.
    """
    num_layers, num_tokens = record.num_layers, record.num_tokens
    arguments = []
    for layer in range(1, num_layers + 1):
        for token in range(1, num_tokens + 1):
            arguments.append(
                Argument(
                    id=grid_argument_id(layer, token),
                    tau=initial_strength(record.p_true[layer - 1][token - 1]),
                    weight=record.tokens[token - 1].weight if use_weights else 1.0,
                )
            )
    links = []
    for layer in range(1, num_layers + 1):
        if topology is Topology.QUADRATIC:
            for left in range(1, num_tokens + 1):
                for right in range(left + 1, num_tokens + 1):
                    links.append(
                        (grid_argument_id(layer, left), grid_argument_id(layer, right))
                    )
        else:
            for token in range(1, num_tokens):
                links.append(
                    (grid_argument_id(layer, token), grid_argument_id(layer, token + 1))
                )
    for layer in range(1, num_layers):
        links.append(
            (grid_argument_id(layer, num_tokens), grid_argument_id(layer + 1, num_tokens))
        )
    return build_qbaf(arguments, links)


def top_right_argument(qbaf: Qbaf) -> str:
    """Id of the decision cell: highest layer, last token."""
    return max(
        (a.id for a in qbaf.arguments),
        key=lambda aid: (argument_layer(aid), argument_token(aid)),
    )


def decide(strengths: StrengthMap, qbaf: Qbaf) -> bool:
    """Verdict: the sign of the top-right cell's final strength."""
    return is_positive(strengths.sigma[top_right_argument(qbaf)])


def evaluate_record(
    record: DebateRecord,
    topology: Topology = Topology.SIMPLE,
    use_weights: bool = True,
) -> tuple[Qbaf, StrengthMap]:
    """Grid construction plus evaluation in one step."""
    qbaf = build_grid(record, topology, use_weights)
    return qbaf, evaluate(qbaf)
