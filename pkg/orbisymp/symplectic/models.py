from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class PairingReport(BaseModel):
    """Both evaluations of the pairing and the correction terms they used."""

    model_config = ConfigDict(extra="forbid")

    value_closed: float
    value_cycle: float
    discrepancy: float
    corrections: Dict[str, List[float]] = Field(
        default_factory=dict,
        description="T_i and X_j used for u, keyed by generator name, as 9 row-major reals.",
    )


@dataclass(frozen=True, eq=False)
class GramReport:
    matrix: np.ndarray
    rank: int
    min_singular: float
    max_singular: float
    antisymmetry: float

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def relative_min_singular(self) -> float:
        return self.min_singular / self.max_singular if self.max_singular > 0 else 0.0
