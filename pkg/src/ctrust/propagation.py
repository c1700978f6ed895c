"""Single-pass belief propagation along a total order."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, LengthMismatch
from .lattice import TotalOrder
from .model import BeliefMatrix, Role, Scenario
from .rules import (
    RuleKind,
    RuleSpec,
    combine_majority,
    combine_unanimous_flip,
    gravity_decide,
    group_of_interest,
)


@dataclass(frozen=True)
class PropagationTrace:
    """Raw and aggregated beliefs of one predicate, listed in order position."""

    order: TotalOrder
    predicate: int
    raw: tuple[bool, ...]
    aggregated: tuple[bool, ...]
    convergence_index: int | None

    def by_agent(self) -> dict[int, bool]:
        return {agent: y for agent, y in zip(self.order, self.aggregated)}

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "predicate": self.predicate,
            "raw": [int(v) for v in self.raw],
            "aggregated": [int(v) for v in self.aggregated],
            "convergence_index": self.convergence_index,
        }


@dataclass(frozen=True)
class AggregatedConfiguration:
    y: BeliefMatrix
    traces: tuple[PropagationTrace, ...]


def convergence_index(aggregated: Sequence[bool], k: int) -> int | None:
    """Smallest ``c`` (k <= c <= n) such that the ``k`` values just before
    ``c`` are equal, or None."""
    n = len(aggregated)
    for c in range(k, n + 1):
        window = aggregated[c - k:c]
        if all(v == window[0] for v in window):
            return c
    return None


def aggregate(raw: Sequence[bool], rule: RuleSpec) -> list[bool]:
    """Aggregated beliefs for raw beliefs already listed in order position."""
    n = len(raw)
    raw = [bool(v) for v in raw]
    if rule.kind is RuleKind.MAJORITY:
        return [combine_majority(raw[i], raw[:i] + raw[i + 1:]) for i in range(n)]
    if rule.kind is RuleKind.GRAVITY_POINT:
        return [gravity_decide(raw, i) for i in range(n)]

    k = rule.depth
    y = raw[:k]
    for i in range(k, n):
        y.append(combine_unanimous_flip(raw[i], [y[j] for j in group_of_interest(rule, n, i)]))
    return y


def propagate_chain(
    order: Sequence[int], raw: Sequence[bool], rule: RuleSpec, predicate: int = 0
) -> PropagationTrace:
    """Propagate beliefs along ``order``; ``raw`` is given in order position."""
    if len(raw) != len(order):
        raise LengthMismatch(f"{len(raw)} beliefs for an order of length {len(order)}")
    y = aggregate(raw, rule)
    conv = convergence_index(y, rule.depth) if rule.is_expert else None
    return PropagationTrace(
        order=tuple(order),
        predicate=predicate,
        raw=tuple(bool(v) for v in raw),
        aggregated=tuple(y),
        convergence_index=conv,
    )


def propagate_all(
    scenario: Scenario, config_index: int, order: Sequence[int], rule: RuleSpec
) -> AggregatedConfiguration:
    """Run one independent chain per predicate of configuration ``config_index``."""
    if not 0 <= config_index < len(scenario.configurations):
        raise IndexOutOfRange(
            f"configuration {config_index} not in 0..{len(scenario.configurations) - 1}"
        )
    if sorted(order) != list(range(scenario.n_systems)):
        raise LengthMismatch("order is not a permutation of the scenario's systems")
    x = scenario.configurations[config_index].bits
    idx = np.asarray(order, dtype=np.intp)
    y = np.empty_like(x)
    traces = []
    for p in range(scenario.n_predicates):
        trace = propagate_chain(order, x[idx, p].tolist(), rule, predicate=p)
        y[idx, p] = trace.aggregated
        traces.append(trace)
    return AggregatedConfiguration(BeliefMatrix(y, Role.AGGREGATED), tuple(traces))


def detect_peer_disagreement(beliefs: BeliefMatrix | np.ndarray, predicate: int) -> bool:
    """True iff two agents hold different beliefs on ``predicate``."""
    bits = beliefs.bits if isinstance(beliefs, BeliefMatrix) else np.asarray(beliefs, dtype=bool)
    col = bits[:, predicate] if bits.ndim == 2 else bits
    return bool(col.any() and not col.all())
