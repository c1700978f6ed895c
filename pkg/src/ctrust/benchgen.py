"""Seeded synthetic scenarios: uniform quality attributes and beliefs whose
error rate falls linearly with quality.

Randomness comes from counter-based Philox streams keyed by
``(seed, purpose, index)``, so configuration ``c`` is the same whether
configurations are generated sequentially, in parallel or alone.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, replace
from typing import Any, Sequence

import numpy as np

from .errors import InvalidRange, ValidationError
from .model import (
    QUALITY_MAX,
    QUALITY_MIN,
    AutonomousSystem,
    BeliefMatrix,
    GroundTruth,
    Predicate,
    Role,
    Scenario,
)

_ATTRIBUTES, _TRUTH, _BELIEFS = 0, 1, 2


class Profile(enum.Enum):
    """Group-quality presets, as quality ranges under the default error model.

    Their error bands: DIST1 80-95%, DIST2 26-90%, DIST3 0-64%, DIST4 0-22%.
    """

    DIST1 = (5.0, 20.0)
    DIST2 = (10.0, 74.0)
    DIST3 = (36.0, 100.0)
    DIST4 = (78.0, 100.0)

    @property
    def quality_range(self) -> tuple[float, float]:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Profile":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValidationError(f"unknown profile {name!r} (dist1..dist4)") from None


@dataclass(frozen=True)
class GeneratorSpec:
    n_systems: int = 20
    n_attributes: int = 2
    n_predicates: int = 1
    n_configurations: int = 100
    quality_range: tuple[float, float] = (0.0, 100.0)
    error_scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for name in ("n_systems", "n_attributes", "n_predicates", "n_configurations"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValidationError(f"{name} must be a positive integer, got {value!r}")
        lo, hi = self.quality_range
        if not QUALITY_MIN <= lo <= hi <= QUALITY_MAX:
            raise InvalidRange(f"quality range {self.quality_range} not within [0, 100]")
        if not self.error_scale > 0:
            raise ValidationError(f"error_scale must be positive, got {self.error_scale!r}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must fit in 64 unsigned bits")

    def with_profile(self, profile: Profile | str) -> "GeneratorSpec":
        if isinstance(profile, str):
            profile = Profile.parse(profile)
        return replace(self, quality_range=profile.quality_range)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["quality_range"] = list(self.quality_range)
        return d

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GeneratorSpec":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown generator field(s) {sorted(unknown)}")
        kwargs = dict(data)
        if "quality_range" in kwargs:
            qr = kwargs["quality_range"]
            if not isinstance(qr, (list, tuple)) or len(qr) != 2:
                raise InvalidRange("quality_range must be [lo, hi]")
            kwargs["quality_range"] = (float(qr[0]), float(qr[1]))
        if "error_scale" in kwargs:
            kwargs["error_scale"] = float(kwargs["error_scale"])
        return cls(**kwargs)


def rng_stream(seed: int, purpose: int, index: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(purpose, index))
    return np.random.Generator(np.random.Philox(ss))


def gen_attributes(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> list[tuple[float, ...]]:
    lo, hi = spec.quality_range
    if lo > hi:
        raise InvalidRange(f"empty quality range {spec.quality_range}")
    rng = rng or rng_stream(spec.seed, _ATTRIBUTES)
    values = rng.uniform(lo, hi, size=(spec.n_systems, spec.n_attributes))
    # uniform() is half-open; a degenerate range must still yield lo exactly
    values = np.clip(values, lo, hi)
    return [tuple(float(v) for v in row) for row in values]


def error_rate(attributes: Sequence[float], error_scale: float = 1.0) -> float:
    """Linear error model: ``clamp(scale * (1 - mean quality / 100), 0, 1)``."""
    mean_quality = sum(attributes) / len(attributes)
    return min(1.0, max(0.0, error_scale * (1.0 - mean_quality / 100.0)))


def gen_truth(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> GroundTruth:
    rng = rng or rng_stream(spec.seed, _TRUTH)
    return GroundTruth(tuple(bool(v) for v in rng.integers(0, 2, size=spec.n_predicates)))


def gen_beliefs(
    systems: Sequence[AutonomousSystem | Sequence[float]],
    truth: GroundTruth,
    error_scale: float,
    rng: np.random.Generator,
) -> BeliefMatrix:
    """Each cell is the truth, flipped with the agent's error probability."""
    eps = np.array([
        error_rate(s.attributes if isinstance(s, AutonomousSystem) else s, error_scale)
        for s in systems
    ])
    draws = rng.random(size=(len(eps), len(truth)))
    wrong = draws < eps[:, None]
    return BeliefMatrix(truth.as_array()[None, :] ^ wrong, Role.RAW)


def gen_configuration(spec: GeneratorSpec, systems, truth: GroundTruth, index: int) -> BeliefMatrix:
    return gen_beliefs(systems, truth, spec.error_scale, rng_stream(spec.seed, _BELIEFS, index))


def gen_scenario(spec: GeneratorSpec) -> Scenario:
    """One attribute draw shared by ``n_configurations`` belief matrices."""
    attrs = gen_attributes(spec)
    systems = tuple(AutonomousSystem(i, a) for i, a in enumerate(attrs))
    predicates = tuple(Predicate(j, f"p{j}") for j in range(spec.n_predicates))
    truth = gen_truth(spec)
    configs = tuple(
        gen_configuration(spec, systems, truth, c) for c in range(spec.n_configurations)
    )
    return Scenario(systems, predicates, truth, configs)
