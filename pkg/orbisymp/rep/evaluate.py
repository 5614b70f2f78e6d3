from __future__ import annotations

from typing import List

import numpy as np

from orbisymp.errors import RelationViolation
from orbisymp.orbifold.models import InclusionMap, OrbifoldSignature
from orbisymp.words import GroupRingElement, Word, canonical_relator, torsion_relators

from .models import GroupRep

EPS = float(np.finfo(float).eps)


def evaluate(rep: GroupRep, word: Word) -> np.ndarray:
    result = np.eye(3)
    for generator, exponent in word.letters:
        result = result @ rep.matrix(generator, exponent)
    return result


def relators(sig: OrbifoldSignature) -> List[Word]:
    return [canonical_relator(sig)] + torsion_relators(sig)


def relation_residual(rep: GroupRep) -> float:
    """max over relators of ||rho(rel) - I||_F"""

    identity = np.eye(3)
    return max(float(np.linalg.norm(evaluate(rep, rel) - identity)) for rel in relators(rep.signature))


def rounding_floor(rep: GroupRep, word: Word) -> float:
    """
    First-order rounding error of ``evaluate(rep, word)``.

    eps * sum_k ||g_1 ... g_(k-1)|| ||g_k|| ||g_(k+1) ... g_n||: a perturbation of one letter
    at machine precision moves the product by about one term of the sum.
    """

    letters = [rep.matrix(generator, exponent) for generator, exponent in word.letters]
    prefix_norms = [1.0]
    prefix = np.eye(3)
    for m in letters:
        prefix = prefix @ m
        prefix_norms.append(float(np.linalg.norm(prefix)))
    suffix_norms = [1.0]
    suffix = np.eye(3)
    for m in reversed(letters):
        suffix = m @ suffix
        suffix_norms.append(float(np.linalg.norm(suffix)))
    suffix_norms.reverse()
    total = sum(
        prefix_norms[k] * float(np.linalg.norm(m)) * suffix_norms[k + 1] for k, m in enumerate(letters)
    )
    return EPS * total


def relation_floor(rep: GroupRep) -> float:
    return max(rounding_floor(rep, rel) for rel in relators(rep.signature))


def check_relations(rep: GroupRep) -> float:
    """Relation residual of ``rep``; raises RelationViolation above ``rep.residual_tol``."""

    residual = relation_residual(rep)
    if not residual <= rep.residual_tol:
        raise RelationViolation(residual, rep.residual_tol)
    return residual


def act(rep: GroupRep, element: GroupRingElement, X: np.ndarray) -> np.ndarray:
    """Action of a group-ring element on sl3: sum_w c_w Ad_rho(w) X."""

    total = np.zeros((3, 3))
    for word, coefficient in element.terms.items():
        g = evaluate(rep, word)
        total = total + float(coefficient) * (g @ X @ np.linalg.inv(g))
    return total


def pullback(rep: GroupRep, piece_signature: OrbifoldSignature, inclusion: InclusionMap) -> GroupRep:
    """The piece representation rho o iota."""

    matrices = {g: evaluate(rep, inclusion.image(g)) for g in piece_signature.generators()}
    return GroupRep(piece_signature, matrices, rep.residual_tol)
