"""Componentwise dominance over quality attributes and the resulting poset.

Agents are identified by their index in the input list. A total order is a
tuple of agent ids, most expert first.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DimensionMismatch, EmptyInput
from .model import AttributeVector, AutonomousSystem

TotalOrder = tuple[int, ...]


class Dominance(enum.Enum):
    STRICTLY_BETTER = "strictly_better"
    STRICTLY_WORSE = "strictly_worse"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def reverse(self) -> "Dominance":
        if self is Dominance.STRICTLY_BETTER:
            return Dominance.STRICTLY_WORSE
        if self is Dominance.STRICTLY_WORSE:
            return Dominance.STRICTLY_BETTER
        return self


def compare(a: Sequence[float], b: Sequence[float]) -> Dominance:
    """Relation of ``a`` to ``b`` under componentwise ``>=``."""
    if len(a) != len(b):
        raise DimensionMismatch(f"cannot compare vectors of length {len(a)} and {len(b)}")
    a_wins = any(x > y for x, y in zip(a, b))
    b_wins = any(y > x for x, y in zip(a, b))
    if a_wins and b_wins:
        return Dominance.INCOMPARABLE
    if a_wins:
        return Dominance.STRICTLY_BETTER
    if b_wins:
        return Dominance.STRICTLY_WORSE
    return Dominance.EQUAL


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    return compare(a, b) is Dominance.STRICTLY_BETTER


def join_meet(vectors: Sequence[Sequence[float]]) -> tuple[AttributeVector, AttributeVector]:
    """Componentwise max (join) and min (meet) over all vectors."""
    if not vectors:
        raise EmptyInput("join/meet of an empty family")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise DimensionMismatch("attribute vectors differ in length")
    join = tuple(float(max(col)) for col in zip(*vectors))
    meet = tuple(float(min(col)) for col in zip(*vectors))
    return join, meet


@dataclass(frozen=True)
class PartialOrder:
    """Strict dominance poset with its Hasse diagram.

    ``cover_edges`` are (dominator, dominated) pairs of the transitive
    reduction. ``better[b]`` is the set of all strict dominators of ``b``.
    """

    n: int
    cover_edges: tuple[tuple[int, int], ...]
    depth_rank: tuple[int, ...]
    join: AttributeVector
    meet: AttributeVector
    better: tuple[frozenset[int], ...]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self.better[i]]

    def precedes(self, a: int, b: int) -> bool:
        """True iff ``a`` strictly dominates ``b``."""
        return a in self.better[b]

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        if sorted(order) != list(range(self.n)):
            return False
        pos = {agent: k for k, agent in enumerate(order)}
        return all(pos[a] < pos[b] for b in range(self.n) for a in self.better[b])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cover_edges": [list(e) for e in self.cover_edges],
            "depth_rank": list(self.depth_rank),
            "join": list(self.join),
            "meet": list(self.meet),
        }


def _vectors(systems: Sequence[AutonomousSystem | Sequence[float]]) -> list[AttributeVector]:
    return [
        tuple(s.attributes) if isinstance(s, AutonomousSystem) else tuple(s)
        for s in systems
    ]


def build_partial_order(systems: Sequence[AutonomousSystem | Sequence[float]]) -> PartialOrder:
    """Build the dominance poset over ``systems`` (agents or raw vectors)."""
    vecs = _vectors(systems)
    if not vecs:
        raise EmptyInput("no systems")
    n = len(vecs)
    join, meet = join_meet(vecs)

    better = [set() for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            rel = compare(vecs[a], vecs[b])
            if rel is Dominance.STRICTLY_BETTER:
                better[b].add(a)
            elif rel is Dominance.STRICTLY_WORSE:
                better[a].add(b)

    # a covers b iff a > b with nothing strictly between them
    edges = []
    for b in range(n):
        for a in sorted(better[b]):
            if not any(a in better[c] for c in better[b]):
                edges.append((a, b))
    edges.sort()

    # strict dominance is transitive, so longest chains follow from the
    # number of dominators along a topological sweep
    rank = [0] * n
    for b in sorted(range(n), key=lambda i: len(better[i])):
        rank[b] = 1 + max((rank[a] for a in better[b]), default=0)

    return PartialOrder(
        n=n,
        cover_edges=tuple(edges),
        depth_rank=tuple(rank),
        join=join,
        meet=meet,
        better=tuple(frozenset(s) for s in better),
    )


def expertise_priority(systems: Sequence[AutonomousSystem | Sequence[float]]) -> list[int]:
    """Agent ids by decreasing mean quality, ties by id.

    Strict dominance implies a strictly larger mean, so this list is
    itself a linear extension.
    """
    vecs = _vectors(systems)
    return sorted(range(len(vecs)), key=lambda i: (-sum(vecs[i]) / len(vecs[i]), i))


def iter_linear_extensions(
    po: PartialOrder, priority: Sequence[int] | None = None
) -> Iterator[TotalOrder]:
    """Yield every linear extension, lexicographically by ``priority``
    (agent ids in preference order; ascending id by default)."""
    n = po.n
    candidates = list(priority) if priority is not None else list(range(n))
    if sorted(candidates) != list(range(n)):
        raise ValueError("priority must be a permutation of the agent ids")
    missing = [len(po.better[b]) for b in range(n)]
    worse = [[] for _ in range(n)]
    for b in range(n):
        for a in po.better[b]:
            worse[a].append(b)
    placed = [False] * n
    seq: list[int] = []

    def backtrack() -> Iterator[TotalOrder]:
        if len(seq) == n:
            yield tuple(seq)
            return
        for a in candidates:
            if placed[a] or missing[a]:
                continue
            placed[a] = True
            seq.append(a)
            for b in worse[a]:
                missing[b] -= 1
            yield from backtrack()
            for b in worse[a]:
                missing[b] += 1
            seq.pop()
            placed[a] = False

    yield from backtrack()


def linear_extensions(
    po: PartialOrder, limit: int, priority: Sequence[int] | None = None
) -> list[TotalOrder]:
    """Up to ``limit`` linear extensions in enumeration order."""
    if limit <= 0:
        return []
    return list(itertools.islice(iter_linear_extensions(po, priority), limit))


def expertise_orders(
    systems: Sequence[AutonomousSystem | Sequence[float]], limit: int
) -> list[TotalOrder]:
    """Up to ``limit`` linear extensions, the first being the
    mean-quality order."""
    return linear_extensions(build_partial_order(systems), limit, expertise_priority(systems))


def expertise_order(systems: Sequence[AutonomousSystem | Sequence[float]]) -> TotalOrder:
    return tuple(expertise_priority(systems))
