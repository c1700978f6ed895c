import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrust.errors import AttributeOutOfRange, DimensionMismatch, EmptyScenario, ValidationError
from ctrust.model import BeliefMatrix, Role, Scenario, make_scenario, validate_scenario


def _payload(**overrides):
    data = {
        "attributes_dim": 2,
        "systems": [{"id": 0, "attributes": [10, 20]}, {"id": 1, "attributes": [30, 40]}],
        "predicates": [{"id": 0, "label": "a"}],
        "truth": [True],
        "configurations": [[[True], [False]]],
    }
    data.update(overrides)
    return data


def test_intersection_fixture_is_accepted(fixture_scenario):
    s = validate_scenario(fixture_scenario.to_dict())
    assert s.n_systems == 5
    assert s.attributes_dim == 2
    assert s.n_predicates == 1
    assert s.configurations[0].column(0).tolist() == [True, True, False, True, False]
    assert s.truth.assignment == (True,)


def test_zero_predicates_is_empty():
    with pytest.raises(EmptyScenario):
        validate_scenario(_payload(predicates=[], truth=[], configurations=[[[], []]]))


@pytest.mark.parametrize("field", ["systems", "configurations"])
def test_other_empty_collections(field):
    with pytest.raises(EmptyScenario):
        validate_scenario(_payload(**{field: []}))


def test_attribute_above_100_rejected():
    systems = [{"id": 0, "attributes": [103.2, 20]}, {"id": 1, "attributes": [30, 40]}]
    with pytest.raises(AttributeOutOfRange):
        validate_scenario(_payload(systems=systems))


@pytest.mark.parametrize("bad", [[-0.1, 5], [float("nan"), 5], [float("inf"), 5], [1, 2, 3], [1]])
def test_bad_attribute_vectors(bad):
    systems = [{"id": 0, "attributes": bad}, {"id": 1, "attributes": [30, 40]}]
    with pytest.raises(AttributeOutOfRange):
        validate_scenario(_payload(systems=systems))


def test_matrix_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        validate_scenario(_payload(configurations=[[[True]]]))
    with pytest.raises(DimensionMismatch):
        validate_scenario(_payload(configurations=[[[True, False], [False, True]]]))
    with pytest.raises(DimensionMismatch):
        validate_scenario(_payload(truth=[True, False]))


def test_unknown_fields_rejected():
    with pytest.raises(ValidationError):
        validate_scenario(_payload(extra=1))
    systems = [{"id": 0, "attributes": [1, 2], "name": "x"}, {"id": 1, "attributes": [3, 4]}]
    with pytest.raises(ValidationError):
        validate_scenario(_payload(systems=systems))


def test_ids_must_be_dense():
    systems = [{"id": 0, "attributes": [1, 2]}, {"id": 2, "attributes": [3, 4]}]
    with pytest.raises(ValidationError):
        validate_scenario(_payload(systems=systems))


def test_non_boolean_beliefs_rejected():
    with pytest.raises(ValidationError):
        validate_scenario(_payload(configurations=[[[2], [0]]]))


def test_field_order_irrelevant_and_ints_accepted():
    data = _payload(configurations=[[[1], [0]]])
    shuffled = dict(reversed(list(data.items())))
    assert validate_scenario(shuffled) == validate_scenario(_payload())


def test_belief_matrix_is_read_only():
    m = BeliefMatrix([[True, False]], Role.AGGREGATED)
    with pytest.raises(ValueError):
        m.bits[0, 0] = False
    assert m.role is Role.AGGREGATED


@st.composite
def scenarios(draw):
    n = draw(st.integers(1, 6))
    m = draw(st.integers(1, 4))
    d = draw(st.integers(1, 3))
    quality = st.floats(0, 100, allow_nan=False)
    attrs = [draw(st.lists(quality, min_size=d, max_size=d)) for _ in range(n)]
    n_cfg = draw(st.integers(1, 3))
    configs = [
        [draw(st.lists(st.booleans(), min_size=m, max_size=m)) for _ in range(n)]
        for _ in range(n_cfg)
    ]
    truth = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    return make_scenario(attrs, configs, truth)


@settings(max_examples=60, deadline=None)
@given(scenarios())
def test_validation_idempotent_and_round_trip(s):
    again = validate_scenario(s)
    assert again == s
    text = s.to_json()
    back = Scenario.from_json(text)
    assert back == s
    assert back.to_json() == text
    assert json.loads(text) == s.to_dict()
