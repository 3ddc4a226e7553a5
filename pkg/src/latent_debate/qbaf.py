"""Acyclic quantitative bipolar argumentation graphs and their evaluation.

An argument carries an initial strength tau in [-1, 1], whose sign is its
polarity (>= 0 reads as True), and a token weight w in [0, 1].  Evaluation
walks the graph in topological order; each argument's energy E is the sum
of its parents' final strengths and its final strength is

    sigma = tanh(E) + w * tau * (1 - tanh(|E|))

which stays inside [-1, 1] and is monotone non-decreasing in E.  Edge
labels (attack vs support) are purely descriptive: a link is an attack when
the source's final strength and the target's initial strength disagree in
polarity.  Labels never feed back into the arithmetic; energy always sums
signed strengths.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleError,
    DuplicateIdError,
    DuplicateLinkError,
    MissingParentStrength,
    RangeError,
    UnknownIdError,
)

Link = tuple[str, str]


def is_positive(x: float) -> bool:
    """Shared sign convention: exact zero counts as positive (reads True)."""
    return x >= 0.0


class EdgeLabel(Enum):
    ATTACK = "Attack"
    SUPPORT = "Support"


@dataclass(frozen=True)
class Argument:
    """One argument: an opaque id, an initial strength and a token weight."""

    id: str
    tau: float
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not -1.0 <= self.tau <= 1.0:
            raise RangeError(f"tau of {self.id!r} is {self.tau}, outside [-1, 1]")
        if not 0.0 <= self.weight <= 1.0:
            raise RangeError(f"weight of {self.id!r} is {self.weight}, outside [0, 1]")


@dataclass(frozen=True)
class Qbaf:
    """A validated acyclic argument graph.

    Construction rejects duplicate ids, duplicate links, self-links, links
    to unknown ids, and cycles.  Instances are immutable; adjacency and the
    canonical topological order are precomputed.
    """

    arguments: tuple[Argument, ...]
    links: tuple[Link, ...]

    def __post_init__(self) -> None:
        by_id: dict[str, Argument] = {}
        for arg in self.arguments:
            if arg.id in by_id:
                raise DuplicateIdError(f"argument id {arg.id!r} appears twice")
            by_id[arg.id] = arg

        seen: set[Link] = set()
        parents: dict[str, list[str]] = {aid: [] for aid in by_id}
        children: dict[str, list[str]] = {aid: [] for aid in by_id}
        for src, dst in self.links:
            if src not in by_id:
                raise UnknownIdError(f"link source {src!r} is not an argument")
            if dst not in by_id:
                raise UnknownIdError(f"link target {dst!r} is not an argument")
            if src == dst:
                raise CycleError(f"self-link on {src!r}")
            if (src, dst) in seen:
                raise DuplicateLinkError(f"link ({src!r}, {dst!r}) appears twice")
            seen.add((src, dst))
            parents[dst].append(src)
            children[src].append(dst)

        # Parents sorted by id so energy summation order is a property of
        # the graph, not of link insertion order.
        for lst in parents.values():
            lst.sort()
        for lst in children.values():
            lst.sort()

        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_parents", {k: tuple(v) for k, v in parents.items()})
        object.__setattr__(self, "_children", {k: tuple(v) for k, v in children.items()})
        object.__setattr__(self, "_topo", self._kahn_order())

    def _kahn_order(self) -> tuple[str, ...]:
        indegree = {aid: len(self._parents[aid]) for aid in self._by_id}
        ready = [aid for aid, deg in indegree.items() if deg == 0]
        heapq.heapify(ready)  # tie-break by id for a reproducible order
        order: list[str] = []
        while ready:
            aid = heapq.heappop(ready)
            order.append(aid)
            for child in self._children[aid]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    heapq.heappush(ready, child)
        if len(order) != len(self._by_id):
            stuck = sorted(aid for aid, deg in indegree.items() if deg > 0)
            raise CycleError(f"link graph has a cycle through {stuck}")
        return tuple(order)

    def argument(self, aid: str) -> Argument:
        return self._by_id[aid]

    def parents(self, aid: str) -> tuple[str, ...]:
        """Sources of links into `aid`, ascending by id."""
        return self._parents[aid]

    @property
    def topological_order(self) -> tuple[str, ...]:
        return self._topo


@dataclass(frozen=True)
class StrengthMap:
    """Final strengths per argument plus derived edge labels."""

    sigma: Mapping[str, float]
    edge_labels: Mapping[Link, EdgeLabel]

    def __post_init__(self) -> None:
        for aid, value in self.sigma.items():
            if not -1.0 <= value <= 1.0:
                raise RangeError(f"sigma of {aid!r} is {value}, outside [-1, 1]")
        object.__setattr__(self, "sigma", MappingProxyType(dict(self.sigma)))
        object.__setattr__(self, "edge_labels", MappingProxyType(dict(self.edge_labels)))

    def strength(self, aid: str) -> float:
        return self.sigma[aid]

    def label(self, link: Link) -> EdgeLabel:
        return self.edge_labels[link]


def build_qbaf(arguments: Iterable[Argument], links: Iterable[Link]) -> Qbaf:
    """Validate and assemble an acyclic QBAF."""
    return Qbaf(tuple(arguments), tuple((src, dst) for src, dst in links))


def aggregate_energy(qbaf: Qbaf, target: str, sigma: Mapping[str, float]) -> float:
    """Sum of final strengths over every argument with a link into `target`.

    Parents are summed in ascending id order; an argument with no parents
    has energy 0.  Raises MissingParentStrength if any parent lacks an
    entry in `sigma` (an evaluation-order violation).
    """
    total = 0.0
    for parent in qbaf.parents(target):
        if parent not in sigma:
            raise MissingParentStrength(
                f"parent {parent!r} of {target!r} has no final strength yet"
            )
        total += sigma[parent]
    return total


def influence(energy: float, tau: float, weight: float) -> float:
    """Final strength from energy and the weighted initial strength.

    Total on tau in [-1, 1] and weight in [0, 1]; the result stays in
    [-1, 1] and is monotone non-decreasing in `energy`.  At zero energy it
    passes weight * tau through, so unattacked arguments with weight 1 keep
    their initial strength exactly.
    """
    return math.tanh(energy) + weight * tau * (1.0 - math.tanh(abs(energy)))


def classify_edges(
    qbaf: Qbaf, sigma: Mapping[str, float] | StrengthMap
) -> dict[Link, EdgeLabel]:
    """Label each link Attack or Support.

    A link (src, dst) is an attack when the polarity of src's final
    strength differs from the polarity of dst's initial strength; exact
    zero counts as positive.  Labels are recomputed from evaluated
    strengths, so a source whose sign flipped during propagation flips the
    label with it.
    """
    values = sigma.sigma if isinstance(sigma, StrengthMap) else sigma
    labels: dict[Link, EdgeLabel] = {}
    for src, dst in qbaf.links:
        same = is_positive(values[src]) == is_positive(qbaf.argument(dst).tau)
        labels[(src, dst)] = EdgeLabel.SUPPORT if same else EdgeLabel.ATTACK
    return labels


def evaluate(qbaf: Qbaf, order: Sequence[str] | None = None) -> StrengthMap:
    """Compute all final strengths plus edge labels.

    Walks `order` (default: the graph's canonical topological order);
    any valid topological order yields a bit-identical result because each
    argument's energy sums fully-determined parent strengths in a fixed
    per-graph order.
    """
    if order is None:
        order = qbaf.topological_order
    sigma: dict[str, float] = {}
    for aid in order:
        arg = qbaf.argument(aid)
        sigma[aid] = influence(aggregate_energy(qbaf, aid, sigma), arg.tau, arg.weight)
    if len(sigma) != len(qbaf.arguments):
        raise MissingParentStrength("evaluation order does not cover every argument")
    return StrengthMap(sigma=sigma, edge_labels=classify_edges(qbaf, sigma))


def debug_json(qbaf: Qbaf, strengths: StrengthMap) -> str:
    """One-line JSON dump of a graph and its evaluation.

    Key order and 17-significant-digit number formatting are fixed so dumps
    are byte-comparable across runs and platforms.
    """

    def num(x: float) -> str:
        return format(x, ".17g")

    args = ",".join(
        '{"id":%s,"tau":%s,"weight":%s,"sigma":%s}'
        % (json.dumps(a.id), num(a.tau), num(a.weight), num(strengths.sigma[a.id]))
        for a in qbaf.arguments
    )
    links = ",".join(
        '{"src":%s,"dst":%s,"label":%s}'
        % (json.dumps(s), json.dumps(d), json.dumps(strengths.edge_labels[(s, d)].value))
        for s, d in qbaf.links
    )
    return '{"arguments":[%s],"links":[%s]}' % (args, links)
