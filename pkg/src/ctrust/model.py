"""Domain types: agents, predicates, beliefs, ground truth and scenarios.

Everything here is immutable once validated. Belief matrices are backed by
read-only numpy boolean arrays of shape ``(n_systems, n_predicates)``.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (
    AttributeOutOfRange,
    DimensionMismatch,
    EmptyScenario,
    ValidationError,
)

QUALITY_MIN = 0.0
QUALITY_MAX = 100.0

AttributeVector = tuple[float, ...]


@dataclass(frozen=True)
class Predicate:
    id: int
    label: str = ""


@dataclass(frozen=True)
class AutonomousSystem:
    id: int
    attributes: AttributeVector
    # Reserved: knowledge sphere restriction. Every agent knows every predicate.
    knowledge: frozenset[int] | None = field(default=None, compare=False)


class Role(enum.Enum):
    RAW = "x"
    AGGREGATED = "y"


class BeliefMatrix:
    """Boolean beliefs per (agent, predicate), tagged raw (x) or aggregated (y)."""

    __slots__ = ("_bits", "_role")

    def __init__(self, bits: Any, role: Role = Role.RAW):
        arr = np.array(bits, dtype=bool, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(f"belief matrix must be 2-D, got shape {arr.shape}")
        arr.setflags(write=False)
        self._bits = arr
        self._role = Role(role)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def role(self) -> Role:
        return self._role

    @property
    def shape(self) -> tuple[int, int]:
        return self._bits.shape  # type: ignore[return-value]

    def column(self, predicate: int) -> np.ndarray:
        return self._bits[:, predicate]

    def to_lists(self) -> list[list[bool]]:
        return [[bool(v) for v in row] for row in self._bits]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BeliefMatrix):
            return NotImplemented
        return self._role is other._role and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((self._role, self._bits.tobytes(), self._bits.shape))

    def __repr__(self) -> str:
        return f"BeliefMatrix(role={self._role.value}, shape={self.shape})"


@dataclass(frozen=True)
class GroundTruth:
    assignment: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.assignment)

    def as_array(self) -> np.ndarray:
        return np.array(self.assignment, dtype=bool)


@dataclass(frozen=True)
class Scenario:
    systems: tuple[AutonomousSystem, ...]
    predicates: tuple[Predicate, ...]
    truth: GroundTruth
    configurations: tuple[BeliefMatrix, ...]

    @property
    def n_systems(self) -> int:
        return len(self.systems)

    @property
    def n_predicates(self) -> int:
        return len(self.predicates)

    @property
    def attributes_dim(self) -> int:
        return len(self.systems[0].attributes) if self.systems else 0

    def attributes(self) -> list[AttributeVector]:
        return [s.attributes for s in self.systems]

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "attributes_dim": self.attributes_dim,
            "systems": [
                {"id": s.id, "attributes": list(s.attributes)} for s in self.systems
            ],
            "predicates": [{"id": p.id, "label": p.label} for p in self.predicates],
            "truth": list(self.truth.assignment),
            "configurations": [m.to_lists() for m in self.configurations],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Any) -> "Scenario":
        return validate_scenario(data)

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        return validate_scenario(json.loads(text))


_TOP_KEYS = {"attributes_dim", "systems", "predicates", "truth", "configurations"}
_SYSTEM_KEYS = {"id", "attributes"}
_PREDICATE_KEYS = {"id", "label"}


def _as_bool(value: Any, where: str) -> bool:
    # JSON booleans, or the integers 0/1
    if isinstance(value, bool):
        return value
    if isinstance(value, int) and value in (0, 1):
        return bool(value)
    raise ValidationError(f"{where}: expected a boolean, got {value!r}")


def _check_keys(obj: Any, allowed: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = allowed - set(obj)
    if missing:
        raise ValidationError(f"{where}: missing field(s) {sorted(missing)}")


def _check_dense(ids: Sequence[int], what: str) -> None:
    for i in ids:
        if not isinstance(i, int) or isinstance(i, bool):
            raise ValidationError(f"{what} id {i!r} is not an integer")
    if sorted(ids) != list(range(len(ids))):
        raise ValidationError(f"{what} ids must be unique and dense 0..{len(ids) - 1}")


def check_attributes(vectors: Iterable[Sequence[float]], dim: int | None = None) -> int:
    """Check a family of attribute vectors; return their common dimension."""
    for k, vec in enumerate(vectors):
        if dim is None:
            dim = len(vec)
        if len(vec) != dim or dim < 1:
            raise AttributeOutOfRange(
                f"system {k}: attribute vector has length {len(vec)}, expected {dim}"
            )
        for v in vec:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise AttributeOutOfRange(f"system {k}: non-numeric attribute {v!r}")
            if not math.isfinite(v) or not QUALITY_MIN <= v <= QUALITY_MAX:
                raise AttributeOutOfRange(
                    f"system {k}: attribute {v!r} outside [{QUALITY_MIN:g}, {QUALITY_MAX:g}]"
                )
    if dim is None:
        raise EmptyScenario("no systems")
    return dim


def validate_scenario(raw: Any) -> Scenario:
    """Validate an untrusted scenario (parsed JSON dict or Scenario).

    Raises ``EmptyScenario``, ``DimensionMismatch``, ``AttributeOutOfRange``
    or the generic ``ValidationError`` for malformed input.
    """
    if isinstance(raw, Scenario):
        raw = raw.to_dict()
    _check_keys(raw, _TOP_KEYS, "scenario")

    systems_raw = raw["systems"]
    predicates_raw = raw["predicates"]
    configs_raw = raw["configurations"]
    truth_raw = raw["truth"]
    for name, value in (("systems", systems_raw), ("predicates", predicates_raw),
                        ("configurations", configs_raw), ("truth", truth_raw)):
        if not isinstance(value, list):
            raise ValidationError(f"{name} must be a list")
    if not systems_raw:
        raise EmptyScenario("scenario has no systems")
    if not predicates_raw:
        raise EmptyScenario("scenario has no predicates")
    if not configs_raw:
        raise EmptyScenario("scenario has no configurations")

    for k, s in enumerate(systems_raw):
        _check_keys(s, _SYSTEM_KEYS, f"systems[{k}]")
    for k, p in enumerate(predicates_raw):
        _check_keys(p, _PREDICATE_KEYS, f"predicates[{k}]")
    _check_dense([s["id"] for s in systems_raw], "system")
    _check_dense([p["id"] for p in predicates_raw], "predicate")

    dim = raw["attributes_dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise AttributeOutOfRange(f"attributes_dim must be a positive integer, got {dim!r}")
    for k, s in enumerate(systems_raw):
        if not isinstance(s["attributes"], list):
            raise AttributeOutOfRange(f"systems[{k}].attributes must be a list")
    check_attributes([s["attributes"] for s in systems_raw], dim)

    systems = tuple(
        AutonomousSystem(int(s["id"]), tuple(float(v) for v in s["attributes"]))
        for s in sorted(systems_raw, key=lambda s: s["id"])
    )
    predicates = tuple(
        Predicate(int(p["id"]), str(p["label"]))
        for p in sorted(predicates_raw, key=lambda p: p["id"])
    )
    n, m = len(systems), len(predicates)

    if len(truth_raw) != m:
        raise DimensionMismatch(f"truth has {len(truth_raw)} entries, expected {m}")
    truth = GroundTruth(tuple(_as_bool(v, f"truth[{j}]") for j, v in enumerate(truth_raw)))

    configurations = []
    for c, cfg in enumerate(configs_raw):
        if not isinstance(cfg, list) or len(cfg) != n:
            raise DimensionMismatch(f"configuration {c}: expected {n} rows (one per system)")
        rows = []
        for i, row in enumerate(cfg):
            if not isinstance(row, list) or len(row) != m:
                raise DimensionMismatch(
                    f"configuration {c}, system {i}: expected {m} beliefs (one per predicate)"
                )
            rows.append([_as_bool(v, f"configurations[{c}][{i}]") for v in row])
        configurations.append(BeliefMatrix(np.array(rows, dtype=bool).reshape(n, m), Role.RAW))

    return Scenario(systems, predicates, truth, tuple(configurations))


def make_scenario(
    attributes: Sequence[Sequence[float]],
    configurations: Sequence[Any],
    truth: Sequence[bool],
    labels: Sequence[str] | None = None,
) -> Scenario:
    """Convenience constructor from plain Python data, validated."""
    n_pred = len(truth)
    labels = list(labels) if labels is not None else [f"p{j}" for j in range(n_pred)]
    data = {
        "attributes_dim": len(attributes[0]) if attributes else 0,
        "systems": [{"id": i, "attributes": list(map(float, a))} for i, a in enumerate(attributes)],
        "predicates": [{"id": j, "label": labels[j]} for j in range(n_pred)],
        "truth": [bool(t) for t in truth],
        "configurations": [np.asarray(c, dtype=bool).tolist() for c in configurations],
    }
    return validate_scenario(data)
