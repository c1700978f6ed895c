"""Four-way intersection use case: five vehicles, one crosswalk predicate.

The pixel-size attribute is measured in pixels rather than percent, so the
scenario rescales it to a percentage of the largest pixel count. The
rescaling is monotone per column and leaves every dominance relation
unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import Scenario, make_scenario

PREDICATE_LABEL = "The pedestrian crosswalk is free"


@dataclass(frozen=True)
class Vehicle:
    number: int  # 1-based, as labelled in the use case
    belief: bool
    target_pixels: float
    roi_coverage_pct: float
    pinned_rank: int


VEHICLES: tuple[Vehicle, ...] = (
    Vehicle(1, True, 1271, 53.3, 2),
    Vehicle(2, True, 3766, 66.7, 1),
    Vehicle(3, False, 748, 22.2, 3),
    Vehicle(4, True, 915, 60.0, 2),
    Vehicle(5, False, 0, 26.7, 4),
)

# a pedestrian is present, so "detected" (1) is the correct belief
TRUTH = True


def raw_attributes() -> list[tuple[float, float]]:
    return [(float(v.target_pixels), v.roi_coverage_pct) for v in VEHICLES]


def percent_attributes() -> list[tuple[float, float]]:
    top = max(v.target_pixels for v in VEHICLES)
    return [(100.0 * v.target_pixels / top, v.roi_coverage_pct) for v in VEHICLES]


def pinned_ranks() -> tuple[int, ...]:
    return tuple(v.pinned_rank for v in VEHICLES)


def intersection_scenario() -> Scenario:
    """System ``i`` is vehicle ``i + 1``."""
    return make_scenario(
        percent_attributes(),
        [[[v.belief] for v in VEHICLES]],
        [TRUTH],
        labels=[PREDICATE_LABEL],
    )
