import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctrust.errors import DimensionMismatch, UndefinedRatio
from ctrust.model import GroundTruth
from ctrust.propagation import propagate_all
from ctrust.reliability import (
    ErrorStatus,
    ErrorTally,
    agent_tally,
    classify,
    collaborative_reliability,
    correctness_error,
    individual_reliability,
    tally,
)
from ctrust.rules import RuleSpec

# (x, T, zeta, theta, zeta_c, theta_c, status); the aggregated belief y is 0
# in every row, and zeta_c / theta_c are its correctness / error
TABLE_ONE = [
    (1, 1, 1, 0, 0, 1, ErrorStatus.INTRODUCED),
    (1, 0, 0, 1, 1, 0, ErrorStatus.CORRECTED),
    (0, 1, 0, 1, 0, 1, ErrorStatus.UNCHANGED_ERROR),
    (0, 0, 1, 0, 1, 0, ErrorStatus.UNCHANGED_CORRECT),
]


@pytest.mark.parametrize("row", TABLE_ONE)
def test_table_one(row):
    x, t, zeta, theta, zeta_c, theta_c, status = row
    y = 0
    assert correctness_error(x, t) == (bool(zeta), bool(theta))
    assert correctness_error(y, t) == (bool(zeta_c), bool(theta_c))
    assert classify(x, y, t) is status


def test_classify_exhaustive():
    seen = {}
    for x, y, t in itertools.product([False, True], repeat=3):
        status = classify(x, y, t)
        if x == y:
            assert status in (ErrorStatus.UNCHANGED_CORRECT, ErrorStatus.UNCHANGED_ERROR)
            assert (status is ErrorStatus.UNCHANGED_CORRECT) == (x == t)
        else:
            assert (status is ErrorStatus.CORRECTED) == (y == t)
        seen.setdefault(status, 0)
        seen[status] += 1
    assert all(v == 2 for v in seen.values()) and len(seen) == 4


def test_tally_examples():
    t = tally([[1], [1], [0]], [[1], [1], [1]], GroundTruth((True,)))
    assert t == ErrorTally(unchanged_correct=2, corrected=1)
    x = np.ones((4, 3), dtype=bool)
    assert tally(x, x, GroundTruth((True,) * 3)) == ErrorTally(unchanged_correct=12)
    with pytest.raises(DimensionMismatch):
        tally([[1, 0]], [[1]], GroundTruth((True, False)))


def test_fixture_two_expert_tally(fixture_scenario):
    y = propagate_all(fixture_scenario, 0, (1, 0, 3, 2, 4), RuleSpec.n_expert(2)).y
    t = tally(fixture_scenario.configurations[0], y, fixture_scenario.truth)
    assert (t.corrected, t.introduced, t.unchanged_correct, t.unchanged_error) == (2, 0, 3, 0)


def test_collaborative_reliability_examples():
    assert collaborative_reliability(ErrorTally(4, 1, 2, 2)) == 1.0
    assert collaborative_reliability(ErrorTally(5, 0, 5, 0)) == 0.5
    assert collaborative_reliability(ErrorTally(3, 0, 3, 6)) == 1.5
    with pytest.raises(UndefinedRatio):
        collaborative_reliability(ErrorTally(0, 7, 0, 3))


tallies = st.builds(
    ErrorTally,
    st.integers(0, 500), st.integers(0, 500), st.integers(0, 500), st.integers(0, 500),
).filter(lambda t: t.unchanged_correct + t.corrected > 0)


@given(tallies)
def test_reliability_sign(t):
    r = collaborative_reliability(t)
    assert r >= 0
    assert (r < 1) == (t.corrected > t.introduced)
    assert (r > 1) == (t.introduced > t.corrected)
    assert (r == 1) == (t.introduced == t.corrected)


def test_individual_reliability():
    x = np.array([[1, 1, 0, 1], [0, 0, 1, 0]], dtype=bool)
    truth = GroundTruth((True, True, True, True))
    assert individual_reliability(x, truth, 0) == 0.75
    assert individual_reliability(x, truth, 1) == 0.25
    assert individual_reliability(x, GroundTruth((True, True, False, True)), 0) == 1.0


def test_unchanged_error_matches_mean_reliability(rng):
    for _ in range(50):
        n, p = int(rng.integers(1, 10)), int(rng.integers(1, 6))
        x = rng.integers(0, 2, size=(n, p)).astype(bool)
        truth = GroundTruth(tuple(bool(v) for v in rng.integers(0, 2, size=p)))
        t = tally(x, x, truth)
        mean_rel = sum(individual_reliability(x, truth, i) for i in range(n)) / n
        assert t.unchanged_error / (n * p) == pytest.approx(1 - mean_rel)
        assert t.total == n * p


def test_agent_tally_sums_to_tally(rng):
    x = rng.integers(0, 2, size=(6, 4)).astype(bool)
    y = rng.integers(0, 2, size=(6, 4)).astype(bool)
    truth = GroundTruth((True, False, False, True))
    total = ErrorTally()
    for i in range(6):
        total = total + agent_tally(x, y, truth, i)
    assert total == tally(x, y, truth)
