from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

Status = Literal["pass", "fail", "skip"]
SuiteName = Literal["fox", "dims", "pairing", "decomposition", "flows"]


class CheckResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    suite: SuiteName
    status: Status
    max_error: Optional[float] = Field(None, description="Largest observed error; null when the check raised.")
    tolerance: float
    seed: int
    runtime_ms: float = 0.0
    detail: Optional[str] = None


class Report(BaseModel):
    """Outcome of one verification run; check order is the registry order, not completion order."""

    model_config = ConfigDict(extra="forbid")

    seed: int
    samples: Optional[int] = None
    suites: List[SuiteName]
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    def counts(self) -> Dict[str, int]:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for check in self.checks:
            counts[check.status] += 1
        return counts


@dataclass(frozen=True)
class CheckContext:
    seed: int
    samples: Optional[int] = None

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def count(self, default: int) -> int:
        """Sample count for a check, capped by ``--samples`` when given."""

        return default if self.samples is None else max(1, min(default, self.samples))


@dataclass(frozen=True)
class Check:
    """A named measurement: ``run`` returns the largest error, or None when the check does not apply."""

    name: str
    suite: SuiteName
    tolerance: float
    run: Callable[[CheckContext], Optional[float]]
    description: str = ""
