"""Aggregation rules: who is in an agent's group of interest, and how
their beliefs are combined with the agent's own.

Positions refer to places in a total order (0 = most expert).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError


class RuleKind(enum.Enum):
    MOST_EXPERT = "most-expert"
    N_EXPERT = "n-expert"
    MAJORITY = "majority"
    GRAVITY_POINT = "gravity-point"


@dataclass(frozen=True)
class RuleSpec:
    kind: RuleKind
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"n-expert rule needs k >= 1, got {self.k}")
        if self.kind is not RuleKind.N_EXPERT and self.k != 1:
            raise ValidationError(f"{self.kind.value} takes no k parameter")

    @classmethod
    def most_expert(cls) -> "RuleSpec":
        return cls(RuleKind.MOST_EXPERT)

    @classmethod
    def n_expert(cls, k: int) -> "RuleSpec":
        return cls(RuleKind.N_EXPERT, k)

    @classmethod
    def majority(cls) -> "RuleSpec":
        return cls(RuleKind.MAJORITY)

    @classmethod
    def gravity_point(cls) -> "RuleSpec":
        return cls(RuleKind.GRAVITY_POINT)

    @classmethod
    def parse(cls, text: str) -> "RuleSpec":
        """Parse a CLI rule name: ``most-expert``, ``n-expert:K``,
        ``majority`` or ``gravity-point``."""
        name, _, arg = text.strip().partition(":")
        try:
            kind = RuleKind(name)
        except ValueError:
            raise ValidationError(f"unknown rule {text!r}") from None
        if kind is RuleKind.N_EXPERT:
            if not arg.isdigit():
                raise ValidationError(f"n-expert needs a positive integer, got {text!r}")
            return cls(kind, int(arg))
        if arg:
            raise ValidationError(f"{name} takes no parameter")
        return cls(kind)

    @property
    def is_expert(self) -> bool:
        return self.kind in (RuleKind.MOST_EXPERT, RuleKind.N_EXPERT)

    @property
    def depth(self) -> int:
        """Number of expert inputs; MostExpert behaves as NExpert(1)."""
        return self.k if self.is_expert else 0

    @property
    def name(self) -> str:
        if self.kind is RuleKind.N_EXPERT:
            return f"n-expert:{self.k}"
        return self.kind.value

    def __str__(self) -> str:
        return self.name


DEFAULT_RULES = (
    RuleSpec.most_expert(),
    RuleSpec.n_expert(2),
    RuleSpec.n_expert(3),
    RuleSpec.n_expert(4),
    RuleSpec.majority(),
    RuleSpec.gravity_point(),
)


def group_of_interest(rule: RuleSpec, order: Sequence[int] | int, i: int) -> list[int]:
    """Positions whose beliefs feed position ``i`` of ``order`` (an order or
    its length). For gravity-point this is only the initial pair; the
    group grows during :func:`gravity_decide`.
    """
    n = order if isinstance(order, int) else len(order)
    if not 0 <= i < n:
        raise IndexError(f"position {i} outside order of length {n}")
    if rule.kind is RuleKind.MOST_EXPERT:
        return [0] if i > 0 else []
    if rule.kind is RuleKind.N_EXPERT:
        return list(range(max(0, i - rule.k), i))
    if rule.kind is RuleKind.MAJORITY:
        return list(range(n))
    return [j for j in (i - 1, i + 1) if 0 <= j < n]


def combine_unanimous_flip(own: bool, inputs: Sequence[bool]) -> bool:
    """Flip ``own`` iff there is at least one input and all contradict it."""
    if inputs and all(bool(v) != own for v in inputs):
        return not own
    return bool(own)


def combine_majority(own: bool, inputs: Sequence[bool]) -> bool:
    """Strict majority over ``inputs`` plus ``own``; a tie keeps ``own``."""
    ones = sum(map(bool, inputs)) + bool(own)
    zeros = len(inputs) + 1 - ones
    if ones == zeros:
        return bool(own)
    return ones > zeros


def gravity_decide(raw: Sequence[bool], i: int) -> bool:
    """Gravity-point decision for position ``i`` from raw beliefs in order.

    The nearest better and nearest worse neighbours are asked first: a
    unanimous contradiction flips, any agreement with a split pair grows
    the group by one more neighbour on each side, after which a strict
    majority over the group plus the agent decides. A majority tie keeps
    growing; an exhausted group with no majority keeps the raw belief.
    """
    n = len(raw)
    if not 0 <= i < n:
        raise IndexError(f"position {i} outside order of length {n}")
    own = bool(raw[i])
    members = [bool(raw[j]) for j in (i - 1, i + 1) if 0 <= j < n]
    if not members:
        return own
    disagree = sum(v != own for v in members)
    if disagree == len(members):
        return not own
    if disagree == 0:
        return own

    step = 1
    while True:
        step += 1
        added = [bool(raw[j]) for j in (i - step, i + step) if 0 <= j < n]
        if not added:
            return own
        members.extend(added)
        if all(v != own for v in members):
            return not own
        ones = sum(members) + own
        zeros = len(members) + 1 - ones
        if ones != zeros:
            return ones > zeros
