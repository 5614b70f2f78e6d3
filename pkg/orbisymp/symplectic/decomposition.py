from __future__ import annotations

from typing import List

from orbisymp.cocycle.extend import restrict
from orbisymp.cocycle.models import Cocycle
from orbisymp.orbifold.models import SplittingSpec
from orbisymp.rep.evaluate import pullback
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger

from .pairing import omega_closed_form

LOGGER = get_logger(__name__)


def piece_pairings(rep: GroupRep, splitting: SplittingSpec, u: Cocycle, v: Cocycle) -> List[float]:
    """omega on every piece, evaluated at the restricted representation and cocycles."""

    values = []
    for piece in splitting.pieces:
        local = pullback(rep, piece.signature, piece.inclusion)
        u_local = restrict(rep, u, piece.signature, piece.inclusion)
        v_local = restrict(rep, v, piece.signature, piece.inclusion)
        values.append(omega_closed_form(local, u_local, v_local))
    return values


def decomposition_residual(rep: GroupRep, splitting: SplittingSpec, u: Cocycle, v: Cocycle) -> float:
    """|omega(u, v) - sum_i omega_i(restricted u, restricted v)| for u, v parabolic along every curve."""

    whole = omega_closed_form(rep, u, v)
    parts = piece_pairings(rep, splitting, u, v)
    residual = abs(whole - sum(parts))
    LOGGER.debug(
        "Decomposition residual",
        extra={"whole": whole, "parts": parts, "residual": residual, "curves": len(splitting.curves)},
    )
    return residual
