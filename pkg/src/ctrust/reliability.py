"""Correctness, error status and reliability metrics."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, UndefinedRatio
from .model import BeliefMatrix, GroundTruth


class ErrorStatus(enum.Enum):
    UNCHANGED_CORRECT = "unchanged_correct"
    UNCHANGED_ERROR = "unchanged_error"
    CORRECTED = "corrected"
    INTRODUCED = "introduced"


def correctness_error(x: bool, t: bool) -> tuple[bool, bool]:
    """(correct, error) of a belief against the truth; error = x XOR t."""
    error = bool(x) != bool(t)
    return not error, error


def classify(x: bool, y: bool, t: bool) -> ErrorStatus:
    if bool(x) == bool(y):
        return ErrorStatus.UNCHANGED_CORRECT if bool(x) == bool(t) else ErrorStatus.UNCHANGED_ERROR
    return ErrorStatus.CORRECTED if bool(y) == bool(t) else ErrorStatus.INTRODUCED


@dataclass(frozen=True)
class ErrorTally:
    unchanged_correct: int = 0
    unchanged_error: int = 0
    corrected: int = 0
    introduced: int = 0

    @property
    def total(self) -> int:
        return self.unchanged_correct + self.unchanged_error + self.corrected + self.introduced

    def __add__(self, other: "ErrorTally") -> "ErrorTally":
        return ErrorTally(
            self.unchanged_correct + other.unchanged_correct,
            self.unchanged_error + other.unchanged_error,
            self.corrected + other.corrected,
            self.introduced + other.introduced,
        )

    def to_dict(self) -> dict[str, int]:
        return {
            "unchanged_correct": self.unchanged_correct,
            "unchanged_error": self.unchanged_error,
            "corrected": self.corrected,
            "introduced": self.introduced,
        }


def _bits(m: BeliefMatrix | np.ndarray) -> np.ndarray:
    return m.bits if isinstance(m, BeliefMatrix) else np.asarray(m, dtype=bool)


def _truth(t: GroundTruth | np.ndarray) -> np.ndarray:
    return t.as_array() if isinstance(t, GroundTruth) else np.asarray(t, dtype=bool)


def individual_reliability(x: BeliefMatrix | np.ndarray, t: GroundTruth, agent: int) -> float:
    """Fraction of the agent's raw beliefs that match the truth."""
    row = _bits(x)[agent]
    truth = _truth(t)
    return float(np.count_nonzero(row == truth)) / len(truth)


def tally(x: BeliefMatrix | np.ndarray, y: BeliefMatrix | np.ndarray, t: GroundTruth) -> ErrorTally:
    xb, yb, tb = _bits(x), _bits(y), _truth(t)
    if xb.shape != yb.shape or xb.shape[1] != tb.shape[0]:
        raise DimensionMismatch(f"shapes x{xb.shape}, y{yb.shape}, T{tb.shape} do not match")
    same = xb == yb
    x_right = xb == tb
    y_right = yb == tb
    return ErrorTally(
        unchanged_correct=int(np.count_nonzero(same & x_right)),
        unchanged_error=int(np.count_nonzero(same & ~x_right)),
        corrected=int(np.count_nonzero(~same & y_right)),
        introduced=int(np.count_nonzero(~same & ~y_right)),
    )


def agent_tally(x, y, t: GroundTruth, agent: int) -> ErrorTally:
    """Tally restricted to one agent's row."""
    return tally(_bits(x)[agent:agent + 1], _bits(y)[agent:agent + 1], t)


def collaborative_reliability(t: ErrorTally) -> float:
    """(unchanged correct + introduced) / (unchanged correct + corrected).

    1 means collaboration was neutral, below 1 it helped, above 1 it hurt.
    """
    denominator = t.unchanged_correct + t.corrected
    if denominator == 0:
        raise UndefinedRatio("no unchanged-correct and no corrected beliefs")
    return (t.unchanged_correct + t.introduced) / denominator
