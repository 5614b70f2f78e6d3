from __future__ import annotations

from dataclasses import dataclass


class OrbisympError(RuntimeError):
    """Base error for orbifold, representation and pairing computations."""


@dataclass
class InvalidSignature(OrbisympError):
    """Raised when a signature is not an orientable cone orbifold of negative Euler characteristic."""

    reason: str

    def __str__(self) -> str:
        return f"invalid signature: {self.reason}"


class EulerObstruction(OrbisympError):
    """Raised when a splitting would produce a piece with non-negative Euler characteristic."""


class NotOrderTwo(OrbisympError):
    """Raised when a full 1-suborbifold is requested between cone points not both of order two."""


class InvalidSplitting(OrbisympError):
    """Raised when curve records or graph data do not describe a usable splitting."""


@dataclass
class NotHyperbolic(OrbisympError):
    """Raised when a matrix does not have real, positive, simple spectrum."""

    reason: str

    def __str__(self) -> str:
        return f"not hyperbolic: {self.reason}"


class DegenerateSpectrum(OrbisympError):
    """Raised when a subspace computation has no clear singular-value gap."""


class RankDeficient(OrbisympError):
    """Raised when a cocycle space contradicts the H0 = 0 assumption."""


class TorsionViolation(OrbisympError):
    """Raised when a cocycle value at a cone generator leaves the torsion subspace."""


class NotParabolic(OrbisympError):
    """Raised when a cocycle value at a peripheral word is not in im(Ad - 1)."""


@dataclass
class NewtonDiverged(OrbisympError):
    """Raised when Gauss-Newton refinement fails to reach the accepted residual."""

    iterations: int
    residual: float
    reason: str = "residual did not converge"

    def __str__(self) -> str:
        return (
            f"Newton refinement diverged after {self.iterations} iterations "
            f"(residual {self.residual:.3e}): {self.reason}"
        )


class FlavorNotAvailable(OrbisympError):
    """Raised when an M (bulge) flow is requested along a full 1-suborbifold."""


@dataclass
class RelationViolation(OrbisympError):
    """Raised when a representation misses its relators by more than its residual tolerance."""

    residual: float
    tolerance: float

    def __str__(self) -> str:
        return f"relation residual {self.residual:.3e} exceeds tolerance {self.tolerance:.3e}"
