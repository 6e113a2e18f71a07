"""Result values returned by the deciders."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class _Truncated:
    """Marker for a non-membership verdict whose witness was too long to rebuild."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TRUNCATED"


TRUNCATED = _Truncated()


class Family(str, enum.Enum):
    CKD = "ckd"
    SIGMA_B1 = "sigmaB1"
    SIGMA_D1 = "sigmaD1"
    SIGMA_TAU1 = "sigmaTau1"
    SIGMA_L2 = "sigmaL2"


@dataclass(frozen=True)
class HierarchyQuery:
    family: Family
    n: int = 1
    k: int = 0
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))


@dataclass(frozen=True)
class Decision:
    """``in_class`` is the verdict; a negative verdict carries a replayable witness (or TRUNCATED)."""

    in_class: bool
    witness: object = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def kind(self) -> str:
        return "in" if self.in_class else "not_in"


class TauVerdict(str, enum.Enum):
    IN = "in"
    NOT_IN = "not_in"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TauDecision:
    """Outcome of the modulus search for the union of all modular levels.

    ``d`` is the modulus at which the verdict was reached (for
    ``INCONCLUSIVE``, the last modulus tried).
    """

    verdict: TauVerdict
    d: int
    decision: Decision | None = None

    @property
    def kind(self) -> str:
        return self.verdict.value


@dataclass(frozen=True)
class Level:
    n: int


@dataclass(frozen=True)
class ExceedsCap:
    cap: int
