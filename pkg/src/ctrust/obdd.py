"""Ordered binary decision diagrams of the propagated group belief.

Variables are order positions: variable ``j`` is the raw belief of the
agent at position ``j`` of the expertise order, so every root-to-terminal
path tests variables in increasing order. Nodes live in an arena (a
tuple of :class:`Node`) and refer to each other by index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .errors import AssignmentTooShort, TooLarge, UnsupportedRule
from .rules import RuleSpec

MAX_VARS = 24
MAX_NODES = 1 << 25


class Node(NamedTuple):
    var: int | None  # None for terminals
    low: int
    high: int
    value: bool | None = None

    @property
    def is_terminal(self) -> bool:
        return self.var is None


@dataclass(frozen=True)
class Diagram:
    nodes: tuple[Node, ...]
    root: int
    n_vars: int
    order: tuple[int, ...] | None = None

    @property
    def node_count(self) -> int:
        return len(self.reachable())

    def reachable(self) -> set[int]:
        seen: set[int] = set()
        stack = [self.root]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            node = self.nodes[u]
            if not node.is_terminal:
                stack.extend((node.low, node.high))
        return seen

    def is_ordered(self) -> bool:
        for u in self.reachable():
            node = self.nodes[u]
            if node.is_terminal:
                continue
            for child in (node.low, node.high):
                cvar = self.nodes[child].var
                if cvar is not None and cvar <= node.var:
                    return False
        return True

    def terminal_count(self) -> int:
        return sum(1 for u in self.reachable() if self.nodes[u].is_terminal)

    def to_dot(self, name: str = "bdd") -> str:
        lines = [f"digraph {name} {{"]
        for u in sorted(self.reachable()):
            node = self.nodes[u]
            if node.is_terminal:
                lines.append(f'  n{u} [shape=box, label="{int(node.value)}"];')
            else:
                label = f"x{node.var}" if self.order is None else f"x{node.var} (s{self.order[node.var]})"
                lines.append(f'  n{u} [shape=circle, label="{label}"];')
                lines.append(f"  n{u} -> n{node.low} [style=dashed];")
                lines.append(f"  n{u} -> n{node.high};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Arena:
    def __init__(self, limit: int = MAX_NODES):
        self.nodes: list[Node] = []
        self.limit = limit

    def add(self, node: Node) -> int:
        if len(self.nodes) >= self.limit:
            raise TooLarge(f"diagram exceeds {self.limit} nodes")
        self.nodes.append(node)
        return len(self.nodes) - 1

    def terminal(self, value: bool) -> int:
        return self.add(Node(None, -1, -1, bool(value)))

    def decision(self, var: int, low: int, high: int) -> int:
        return self.add(Node(var, low, high))


def build_unreduced(
    n: int, function: Callable[[tuple[bool, ...]], bool] | None = None
) -> Diagram:
    """Complete decision tree over ``n`` variables, one terminal per leaf.

    Leaves are labelled by ``function`` of the full assignment; the default
    is the belief of the last variable.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    if n > MAX_VARS:
        raise TooLarge(f"n={n} exceeds the {MAX_VARS}-variable guard")
    label = function or (lambda a: a[-1])
    arena = _Arena(limit=(1 << (n + 1)))

    def build(depth: int, prefix: tuple[bool, ...]) -> int:
        if depth == n:
            return arena.terminal(label(prefix))
        low = build(depth + 1, prefix + (False,))
        high = build(depth + 1, prefix + (True,))
        return arena.decision(depth, low, high)

    root = build(0, ())
    return Diagram(tuple(arena.nodes), root, n)


def build_propagated(order: Sequence[int] | int, rule: RuleSpec) -> Diagram:
    """Decision tree of the last agent's aggregated belief.

    Shannon expansion in expertise order, carrying the last ``k``
    aggregated beliefs along each path. A path whose ``k`` most recent
    aggregated beliefs agree has converged and ends in a terminal holding
    that belief; otherwise the terminal after the last variable holds the
    last aggregated belief. Terminals are not shared.
    """
    if not rule.is_expert:
        raise UnsupportedRule(f"no diagram construction for {rule.name}")
    order_t = tuple(range(order)) if isinstance(order, int) else tuple(order)
    n = len(order_t)
    if n < 1:
        raise ValueError("need at least one agent")
    k = rule.depth
    arena = _Arena()

    def expand(depth: int, state: tuple[bool, ...]) -> int:
        if len(state) == k and all(v == state[0] for v in state):
            return arena.terminal(state[0])
        if depth == n:
            return arena.terminal(state[-1])
        children = []
        for x in (False, True):
            if depth < k:
                y = x
            else:
                y = (not x) if all(v != x for v in state) else x
            children.append(expand(depth + 1, (state + (y,))[-k:]))
        return arena.decision(depth, children[0], children[1])

    root = expand(0, ())
    return Diagram(tuple(arena.nodes), root, n, order_t)


def reduce(d: Diagram, merge_isomorphic: bool = True) -> Diagram:
    """Reduce ``d``: one terminal per value, then (by default) drop nodes
    whose branches coincide and share structurally identical nodes.

    With ``merge_isomorphic=False`` only duplicate terminals are removed.
    """
    arena = _Arena()
    terminals: dict[bool, int] = {}
    unique: dict[tuple[int, int, int], int] = {}
    memo: dict[int, int] = {}

    def visit(u: int) -> int:
        if u in memo:
            return memo[u]
        node = d.nodes[u]
        if node.is_terminal:
            if node.value not in terminals:
                terminals[node.value] = arena.terminal(node.value)
            r = terminals[node.value]
        else:
            low = visit(node.low)
            high = visit(node.high)
            if not merge_isomorphic:
                r = arena.decision(node.var, low, high)
            elif low == high:
                r = low
            else:
                key = (node.var, low, high)
                if key not in unique:
                    unique[key] = arena.decision(*key)
                r = unique[key]
        memo[u] = r
        return r

    root = visit(d.root)
    return Diagram(tuple(arena.nodes), root, d.n_vars, d.order)


def evaluate(d: Diagram, assignment: Sequence[bool]) -> bool:
    """Follow low (0) / high (1) edges from the root to a terminal."""
    u = d.root
    while True:
        node = d.nodes[u]
        if node.is_terminal:
            return bool(node.value)
        if node.var >= len(assignment):
            raise AssignmentTooShort(
                f"assignment of length {len(assignment)} lacks variable {node.var}"
            )
        u = node.high if assignment[node.var] else node.low


def constant(value: bool, n_vars: int = 0) -> Diagram:
    return Diagram((Node(None, -1, -1, bool(value)),), 0, n_vars)


@dataclass(frozen=True)
class SizeReport:
    n: int
    rule: str
    unreduced: int
    propagated: int
    terminals_merged: int
    reduced: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def size_report(n: int, rule: RuleSpec) -> SizeReport:
    """Node counts of the full tree, the propagated tree, and its reductions."""
    propagated = build_propagated(n, rule)
    return SizeReport(
        n=n,
        rule=rule.name,
        unreduced=(1 << (n + 1)) - 1,
        propagated=propagated.node_count,
        terminals_merged=reduce(propagated, merge_isomorphic=False).node_count,
        reduced=reduce(propagated).node_count,
    )
