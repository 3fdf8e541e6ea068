"""Outcome records produced by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from .linalg import Scalar, Subspace


class Outcome(str, Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Certificate:
    """Result of a check.

    ``witness`` holds the violating data for a refutation or the exhibited
    generators for a certification; ``details`` carries dimensions and other
    numbers worth reporting.
    """

    outcome: Outcome
    witness: Any = None
    generators_used: int = 0
    seed: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.outcome is Outcome.CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.outcome is Outcome.REFUTED

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "seed": self.seed,
            "generators_used": self.generators_used,
            "details": encode(self.details),
            "witness": encode(self.witness),
        }


def encode(obj):
    """Recursively turn scalars, vectors and subspaces into JSON-ready values."""
    if isinstance(obj, Scalar):
        return obj.format()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Subspace):
        return {"ambient_dim": obj.ambient_dim, "dim": obj.dim, "basis": encode(obj.basis)}
    if isinstance(obj, Certificate):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj
