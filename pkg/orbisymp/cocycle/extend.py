from __future__ import annotations

import numpy as np

from orbisymp.orbifold.models import InclusionMap, OrbifoldSignature
from orbisymp.rep.evaluate import relators
from orbisymp.rep.models import GroupRep
from orbisymp.words import GroupRingElement, Word

from .models import Cocycle


def extend(rep: GroupRep, u: Cocycle, word: Word) -> np.ndarray:
    """
    Value of the cocycle on a word.

    u(gh) = u(g) + Ad_g u(h) and u(v^-1) = -Ad_{v^-1} u(v); the prefix g is carried along.
    """

    total = np.zeros((3, 3))
    prefix = np.eye(3)
    prefix_inv = np.eye(3)
    for generator, exponent in word.letters:
        m = rep.matrix(generator, exponent)
        m_inv = rep.matrix(generator, -exponent)
        if exponent == 1:
            total = total + prefix @ u.values[generator] @ prefix_inv
        else:
            ahead = prefix @ m
            total = total - ahead @ u.values[generator] @ m_inv @ prefix_inv
        prefix = prefix @ m
        prefix_inv = m_inv @ prefix_inv
    return total


def extend_ring(rep: GroupRep, u: Cocycle, element: GroupRingElement) -> np.ndarray:
    total = np.zeros((3, 3))
    for word, coefficient in element.terms.items():
        total = total + float(coefficient) * extend(rep, u, word)
    return total


def coboundary(rep: GroupRep, X: np.ndarray) -> Cocycle:
    """(dX)(v) = Ad_rho(v) X - X"""

    return Cocycle(
        rep.signature,
        {g: rep.matrix(g) @ X @ rep.matrix(g, -1) - X for g in rep.generators()},
    )


def cocycle_residual(rep: GroupRep, u: Cocycle) -> float:
    """Largest Frobenius norm of u over the relators; zero exactly on cocycles."""

    return max(float(np.linalg.norm(extend(rep, u, rel))) for rel in relators(rep.signature))


def restrict(rep: GroupRep, u: Cocycle, piece_signature: OrbifoldSignature, inclusion: InclusionMap) -> Cocycle:
    """Pull u back along the inclusion: piece generator v -> u(iota(v))."""

    return Cocycle(
        piece_signature,
        {g: extend(rep, u, inclusion.image(g)) for g in piece_signature.generators()},
    )
