from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Literal, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from orbisymp.orbifold.models import OrbifoldSignature
from orbisymp.rep.algebra import DIM, from_coords, to_coords
from orbisymp.rep.models import GroupRep
from orbisymp.words import Generator, Word

SpaceKind = Literal["Z1", "Z1_par", "B1", "H1_par_complement"]


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Assignment generator -> sl3 element; coordinates follow the signature's generator order."""

    signature: OrbifoldSignature
    values: Mapping[Generator, np.ndarray]

    @classmethod
    def zero(cls, sig: OrbifoldSignature) -> "Cocycle":
        return cls(sig, {g: np.zeros((3, 3)) for g in sig.generators()})

    @classmethod
    def from_coords(cls, sig: OrbifoldSignature, coords: np.ndarray) -> "Cocycle":
        vector = np.asarray(coords, dtype=float)
        generators = sig.generators()
        if vector.shape != (DIM * len(generators),):
            raise ValueError(f"expected {DIM * len(generators)} coordinates, got shape {vector.shape}")
        return cls(sig, {g: from_coords(vector[k * DIM : (k + 1) * DIM]) for k, g in enumerate(generators)})

    def coords(self) -> np.ndarray:
        return np.concatenate([to_coords(self.values[g]) for g in self.signature.generators()])

    def value(self, generator: Generator) -> np.ndarray:
        return self.values[generator]

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.signature, {g: self.values[g] + other.values[g] for g in self.values})

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return self + other.scale(-1.0)

    def __neg__(self) -> "Cocycle":
        return self.scale(-1.0)

    def scale(self, factor: float) -> "Cocycle":
        return Cocycle(self.signature, {g: factor * v for g, v in self.values.items()})

    def conjugate(self, g: np.ndarray) -> "Cocycle":
        """Ad_g u, the cocycle matching the conjugated representation g rho g^-1."""

        g_inv = np.linalg.inv(g)
        return Cocycle(self.signature, {gen: g @ v @ g_inv for gen, v in self.values.items()})

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords()))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of sl3 with an orthonormal basis given as columns in coordinates."""

    basis: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.basis.shape[1])

    def matrices(self) -> List[np.ndarray]:
        return [from_coords(self.basis[:, k]) for k in range(self.dimension)]

    def project(self, X: np.ndarray) -> np.ndarray:
        coords = to_coords(X)
        return from_coords(self.basis @ (self.basis.T @ coords))

    def distance(self, X: np.ndarray) -> float:
        return float(np.linalg.norm(X - self.project(X)))


@dataclass(frozen=True, eq=False)
class CocycleSpace:
    """Orthonormal coordinate basis (columns) of a space of cocycles of ``rep``."""

    rep: GroupRep
    kind: SpaceKind
    matrix: np.ndarray
    words: Tuple[Word, ...] = ()

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[1])

    def cocycle(self, index: int) -> Cocycle:
        return Cocycle.from_coords(self.rep.signature, self.matrix[:, index])

    @property
    def basis(self) -> List[Cocycle]:
        return [self.cocycle(k) for k in range(self.dimension)]

    def combination(self, coefficients: np.ndarray) -> Cocycle:
        return Cocycle.from_coords(self.rep.signature, self.matrix @ np.asarray(coefficients, dtype=float))

    def random(self, rng: np.random.Generator) -> Cocycle:
        return self.combination(rng.standard_normal(self.dimension))

    def min_singular_value(self) -> float:
        if self.dimension == 0:
            return 0.0
        return float(np.linalg.svd(self.matrix, compute_uv=False)[-1])


@dataclass(frozen=True)
class MayerVietorisRanks:
    """Both sides of dim Z1_par(G, S) - dim B1 = sum_i dim H1_par(G_i) + M."""

    ambient: int
    pieces: Tuple[int, ...]
    flow_directions: int

    @property
    def total(self) -> int:
        return sum(self.pieces) + self.flow_directions

    @property
    def balanced(self) -> bool:
        return self.ambient == self.total


class CocycleFile(BaseModel):
    """On-disk cocycle: generator name -> 9 row-major reals of a traceless matrix."""

    model_config = ConfigDict(extra="forbid")

    signature: OrbifoldSignature
    generators: Dict[str, List[float]] = Field(..., description="Row-major traceless 3x3 values.")
    kind: Optional[str] = Field(None, description="Space the cocycle was drawn from, when known.")
