from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import expm

from orbisymp.errors import NewtonDiverged, RelationViolation
from orbisymp.utils.logging import get_logger
from orbisymp.utils.settings import get_settings
from orbisymp.words import Generator, canonical_relator, fox_derivative

from .algebra import Algebra, basis_for
from .evaluate import act, check_relations, evaluate, relation_floor
from .models import GroupRep

LOGGER = get_logger(__name__)

EXPECTED_RANK = {"sl3": 8, "so21": 3}

# sufficient-decrease constant of the backtracking line search
ARMIJO = 1e-4


def _residual_vector(rep: GroupRep) -> np.ndarray:
    return (evaluate(rep, canonical_relator(rep.signature)) - np.eye(3)).ravel()


def _residual(rep: GroupRep) -> float:
    with np.errstate(all="ignore"):
        return float(np.linalg.norm(_residual_vector(rep)))


def _jacobian(rep: GroupRep, basis: np.ndarray) -> Tuple[np.ndarray, List[Generator]]:
    """
    Derivative of rho(r) - I in the generator parameters.

    Cone generators move by conjugation s -> exp(X) s exp(-X), all other generators by
    left translation v -> exp(X) v, so torsion relators stay satisfied exactly.
    """

    relator = canonical_relator(rep.signature)
    rho_r = evaluate(rep, relator)
    columns: List[np.ndarray] = []
    generators = rep.generators()
    for generator in generators:
        derivative = fox_derivative(relator, generator)
        for B in basis:
            if generator.kind == "s":
                s = rep.matrix(generator)
                tangent = B - s @ B @ rep.matrix(generator, -1)
            else:
                tangent = B
            columns.append((act(rep, derivative, tangent) @ rho_r).ravel())
    return np.array(columns).T, generators


def _step(rep: GroupRep, delta: np.ndarray, basis: np.ndarray, generators: List[Generator]) -> GroupRep:
    dim = basis.shape[0]
    updates: Dict[Generator, np.ndarray] = {}
    for offset, generator in enumerate(generators):
        X = np.tensordot(delta[offset * dim : (offset + 1) * dim], basis, axes=1)
        E = expm(X)
        if generator.kind == "s":
            updates[generator] = E @ rep.matrix(generator) @ expm(-X)
        else:
            updates[generator] = E @ rep.matrix(generator)
    return rep.with_matrices(updates)


def _capped(delta: np.ndarray, dim: int, max_step: float) -> np.ndarray:
    """Scale ``delta`` so that no generator moves by more than ``max_step`` in the Lie algebra."""

    largest = float(np.max(np.linalg.norm(delta.reshape(-1, dim), axis=1)))
    return delta if largest <= max_step else delta * (max_step / largest)


def _trial(
    rep: GroupRep, delta: np.ndarray, basis: np.ndarray, generators: List[Generator]
) -> Tuple[Optional[GroupRep], float]:
    try:
        with np.errstate(all="ignore"):
            candidate = _step(rep, delta, basis, generators)
    except (np.linalg.LinAlgError, ValueError, FloatingPointError):
        return None, float("nan")
    if not all(np.all(np.isfinite(m)) for m in candidate.matrices.values()):
        return None, float("nan")
    return candidate, _residual(candidate)


def _line_search(
    rep: GroupRep,
    residual: float,
    delta: np.ndarray,
    basis: np.ndarray,
    generators: List[Generator],
    limit: int,
) -> Tuple[Optional[GroupRep], float, float]:
    """Halve the step until the residual decreases sufficiently; (None, residual, 0) when it never does."""

    step = 1.0
    for _ in range(limit):
        candidate, value = _trial(rep, step * delta, basis, generators)
        if candidate is not None and np.isfinite(value) and value <= (1.0 - ARMIJO * step) * residual:
            return candidate, value, step
        step *= 0.5
    return None, residual, 0.0


def accepted_residual(rep: GroupRep) -> float:
    """Residual accepted as converged: newton_accept_tol, or the relator's rounding floor when larger."""

    settings = get_settings()
    return max(settings.newton_accept_tol, settings.newton_floor_factor * relation_floor(rep))


def newton_refine(rep: GroupRep, algebra: Algebra = "sl3") -> GroupRep:
    """
    Damped Gauss-Newton projection of ``rep`` back onto the relation variety.

    Steps are minimum-norm least-squares solutions, capped per generator and shortened by a
    backtracking line search, so the residual decreases monotonically and the refined point
    stays close to the input. Iteration stops at ``newton_tol``, when no shortened step
    decreases the residual, or after ``newton_stall_limit`` slow iterations. The result must
    then lie below ``accepted_residual``; its ``residual_tol`` is raised to that level if needed.
    Raises NewtonDiverged on a rank-deficient Jacobian, a non-finite input, or a residual left
    above the accepted one.
    """

    settings = get_settings()
    basis = basis_for(algebra)
    expected_rank = EXPECTED_RANK[algebra]
    current = rep
    residual = _residual(current)
    if not np.isfinite(residual):
        raise NewtonDiverged(0, residual, "non-finite input residual")

    iteration, slow = 0, 0
    for iteration in range(1, settings.newton_max_iter + 1):
        jacobian, generators = _jacobian(current, basis)
        singular = np.linalg.svd(jacobian, compute_uv=False)
        rank = int(np.sum(singular > settings.rank_tol * max(float(singular[0]), 1e-300)))
        if rank < expected_rank:
            raise NewtonDiverged(iteration, residual, f"Jacobian rank {rank} below {expected_rank}")
        if residual < settings.newton_tol:
            break
        delta, *_ = np.linalg.lstsq(jacobian, -_residual_vector(current), rcond=None)
        delta = _capped(delta, basis.shape[0], settings.newton_max_step)
        candidate, trial_residual, step = _line_search(
            current, residual, delta, basis, generators, settings.newton_backtrack_limit
        )
        LOGGER.debug(
            "Newton step",
            extra={"iteration": iteration, "residual": trial_residual, "step": step, "algebra": algebra},
        )
        if candidate is None:
            break
        slow = slow + 1 if trial_residual > 0.5 * residual else 0
        current, residual = candidate, trial_residual
        if slow >= settings.newton_stall_limit:
            break

    accepted = accepted_residual(current)
    if residual >= accepted:
        raise NewtonDiverged(iteration, residual, f"stopped above the accepted residual {accepted:.3e}")
    refined = current.with_tolerance(max(current.residual_tol, accepted))
    try:
        check_relations(refined)
    except RelationViolation as exc:
        raise NewtonDiverged(iteration, exc.residual, "torsion relators violated") from exc
    return refined
