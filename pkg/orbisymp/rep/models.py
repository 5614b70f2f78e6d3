from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from orbisymp.orbifold.models import OrbifoldSignature
from orbisymp.utils.settings import get_settings
from orbisymp.words import Generator


def _frozen(matrix: np.ndarray) -> np.ndarray:
    array = np.array(matrix, dtype=float, copy=True)
    if array.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GroupRep:
    """
    Representation of an orbifold group into SL(3, R), given on presentation generators.

    ``residual_tol`` bounds the relation residual; ``check_relations`` enforces it.
    """

    signature: OrbifoldSignature
    matrices: Mapping[Generator, np.ndarray]
    residual_tol: float = field(default_factory=lambda: get_settings().residual_tol)
    inverses: Dict[Generator, np.ndarray] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        expected = self.signature.generators()
        missing = [str(g) for g in expected if g not in self.matrices]
        extra = [str(g) for g in self.matrices if g not in expected]
        if missing or extra:
            raise ValueError(f"generator mismatch: missing {missing}, unexpected {extra}")
        frozen = {g: _frozen(self.matrices[g]) for g in expected}
        object.__setattr__(self, "matrices", frozen)
        object.__setattr__(self, "inverses", {g: _frozen(np.linalg.inv(m)) for g, m in frozen.items()})

    def generators(self) -> List[Generator]:
        return list(self.matrices.keys())

    def matrix(self, generator: Generator, exponent: int = 1) -> np.ndarray:
        return self.matrices[generator] if exponent == 1 else self.inverses[generator]

    def with_matrices(self, updates: Mapping[Generator, np.ndarray]) -> "GroupRep":
        merged = dict(self.matrices)
        merged.update(updates)
        return GroupRep(self.signature, merged, self.residual_tol)

    def with_tolerance(self, residual_tol: float) -> "GroupRep":
        return GroupRep(self.signature, self.matrices, residual_tol)

    def conjugate(self, g: np.ndarray) -> "GroupRep":
        g_inv = np.linalg.inv(g)
        return GroupRep(
            self.signature, {gen: g @ m @ g_inv for gen, m in self.matrices.items()}, self.residual_tol
        )

    def max_difference(self, other: "GroupRep") -> float:
        return max(
            (float(np.max(np.abs(self.matrices[g] - other.matrices[g]))) for g in self.matrices),
            default=0.0,
        )


@dataclass(frozen=True, eq=False)
class HypInvariants:
    """Conjugacy invariants of a Hyp+ element with its spectral projectors."""

    length: float
    bulge: float
    eigenvalues: np.ndarray
    projectors: np.ndarray


class FuchsianSeed(BaseModel):
    """Seed parameters for the polygon constructor of cone-sphere representations."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    radius_scale: float = Field(1.0, ge=0.0, description="Scale applied to the distance of every rotation centre.")
    jitter: float = Field(0.0, ge=0.0, description="Size of a seeded so(2,1) conjugation of each rotation.")
    seed: int = Field(0, description="Seed of the jitter generator.")


class RepFile(BaseModel):
    """On-disk representation: generator name -> 9 row-major reals."""

    model_config = ConfigDict(extra="forbid")

    signature: OrbifoldSignature
    generators: Dict[str, List[float]] = Field(..., description="Row-major 3x3 matrices keyed by generator name.")
    residual: Optional[float] = Field(None, description="Relation residual recorded when the file was written.")
