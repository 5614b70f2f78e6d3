from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from orbisymp.errors import InvalidSignature

from .models import OrbifoldSignature

PieceKind = Literal["P1", "P2", "P3", "P4"]


def euler_characteristic(sig: OrbifoldSignature) -> Fraction:
    return sig.euler_characteristic()


def validate(sig: OrbifoldSignature) -> OrbifoldSignature:
    """Return ``sig`` unchanged when every cone order is >= 2 and chi < 0."""

    bad = [order for order in sig.cone_orders if order < 2]
    if bad:
        raise InvalidSignature(f"cone orders must be at least 2, got {bad}")
    chi = sig.euler_characteristic()
    if chi >= 0:
        raise InvalidSignature(f"Euler characteristic {chi} of {sig.label()} is not negative")
    return sig


def dimension_closed(sig: OrbifoldSignature) -> int:
    """16g - 16 + 6c - 2c_b for a closed orbifold with c cone points, c_b of them of order two."""

    if sig.boundary != 0:
        raise InvalidSignature(f"dimension formula needs a closed orbifold, got {sig.boundary} boundary components")
    validate(sig)
    return 16 * sig.genus - 16 + 6 * sig.cone_count - 2 * sig.order_two_count


@dataclass(frozen=True)
class PieceClass:
    kind: PieceKind
    exceptional: bool

    @property
    def expected_dimension(self) -> int:
        """Dimension of the fixed-boundary deformation space of the piece."""

        return 0 if self.exceptional else 2


def classify_piece(sig: OrbifoldSignature) -> Optional[PieceClass]:
    """Elementary type of a genus-0 piece with three holes, or None for any other piece."""

    if sig.genus != 0 or sig.hole_count != 3:
        return None
    kind: PieceKind = {3: "P1", 2: "P2", 1: "P3", 0: "P4"}[sig.boundary]
    return PieceClass(kind=kind, exceptional=sig.order_two_count > 0)


def is_elementary(sig: OrbifoldSignature) -> bool:
    return classify_piece(sig) is not None
