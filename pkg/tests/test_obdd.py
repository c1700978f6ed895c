import itertools

import pytest

from ctrust.errors import AssignmentTooShort, TooLarge, UnsupportedRule
from ctrust.obdd import (
    build_propagated,
    build_unreduced,
    constant,
    evaluate,
    reduce,
    size_report,
)
from ctrust.propagation import propagate_chain
from ctrust.rules import RuleSpec

ME, N2, N3 = RuleSpec.most_expert(), RuleSpec.n_expert(2), RuleSpec.n_expert(3)


def _last_aggregated(bits, rule):
    return propagate_chain(range(len(bits)), bits, rule).aggregated[-1]


def _minimal_size(fn, n):
    """Node count of the canonical reduced diagram, from the truth table.

    A node at level j corresponds to a distinct subfunction obtained by
    fixing the first j variables that still depends on variable j.
    """
    table = {bits: fn(bits) for bits in itertools.product([False, True], repeat=n)}
    count = len(set(table.values()))
    for j in range(n):
        seen = set()
        for prefix in itertools.product([False, True], repeat=j):
            sub = tuple(table[prefix + rest] for rest in itertools.product([False, True], repeat=n - j))
            half = len(sub) // 2
            if sub[:half] != sub[half:]:
                seen.add(sub)
        count += len(seen)
    return count


def test_unreduced_sizes():
    assert build_unreduced(3).node_count == 15
    assert build_unreduced(1).node_count == 3
    with pytest.raises(TooLarge):
        build_unreduced(25)


def test_unreduced_reduces_to_projection():
    # default leaves are the last variable, so the reduced form has one decision
    d = reduce(build_unreduced(6))
    assert d.node_count == 3
    assert reduce(build_unreduced(4, lambda a: True)).node_count == 1


def test_most_expert_tree_computes_first_variable():
    d = build_propagated(3, ME)
    for bits in itertools.product([False, True], repeat=3):
        assert evaluate(d, bits) == bits[0]


def test_two_expert_shortcut():
    d = build_propagated(4, N2)
    # x0 == x1 converges immediately; the diagram stops reading there
    root = d.nodes[d.root]
    child = d.nodes[root.low]
    assert d.nodes[child.low].is_terminal and d.nodes[child.low].value is False
    assert evaluate(d, [True, True]) is True
    assert evaluate(reduce(build_propagated(3, N2)), [True, False, True]) is True


def test_reduce_examples():
    assert reduce(build_unreduced(5, lambda a: False)).node_count == 1
    assert reduce(build_propagated(10, ME)).node_count == 3
    for n in range(2, 12):
        assert reduce(build_propagated(n, N2)).node_count <= 2 * n + 2


def test_size_report_six():
    r = size_report(6, N2)
    assert (r.unreduced, r.propagated, r.terminals_merged, r.reduced) == (127, 23, 13, 12)


@pytest.mark.parametrize("rule", [ME, N2, N3], ids=str)
@pytest.mark.parametrize("n", range(1, 10))
def test_equivalence_with_propagation(rule, n):
    tree = build_propagated(n, rule)
    reduced = reduce(tree)
    plain = reduce(tree, merge_isomorphic=False)
    assert reduced.is_ordered() and tree.is_ordered()
    for bits in itertools.product([False, True], repeat=n):
        expected = _last_aggregated(bits, rule)
        assert evaluate(tree, bits) == expected
        assert evaluate(reduced, bits) == expected
        assert evaluate(plain, bits) == expected


@pytest.mark.parametrize("rule", [ME, N2, N3], ids=str)
@pytest.mark.parametrize("n", range(1, 9))
def test_reduced_is_minimal(rule, n):
    fn = lambda bits: _last_aggregated(bits, rule)  # noqa: E731
    assert reduce(build_propagated(n, rule)).node_count == _minimal_size(fn, n)


def test_large_random_assignments(rng):
    for n in (16, 20, 24):
        for rule in (ME, N2):
            d = reduce(build_propagated(n, rule))
            for _ in range(200):
                bits = rng.integers(0, 2, size=n).astype(bool).tolist()
                assert evaluate(d, bits) == _last_aggregated(bits, rule)


def test_reduce_idempotent():
    for n in (3, 7):
        once = reduce(build_propagated(n, N3))
        twice = reduce(once)
        assert once.node_count == twice.node_count
        for bits in itertools.product([False, True], repeat=n):
            assert evaluate(once, bits) == evaluate(twice, bits)


def test_errors():
    for rule in (RuleSpec.majority(), RuleSpec.gravity_point()):
        with pytest.raises(UnsupportedRule):
            build_propagated(4, rule)
    with pytest.raises(AssignmentTooShort):
        evaluate(build_propagated(4, N2), [True])
    assert evaluate(constant(True), []) is True


def test_dot_output():
    dot = reduce(build_propagated(4, N2)).to_dot()
    assert dot.startswith("digraph")
    assert dot.rstrip().endswith("}")
    assert "x0" in dot
