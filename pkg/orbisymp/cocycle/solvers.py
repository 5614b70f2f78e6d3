from __future__ import annotations

import numpy as np

from orbisymp.errors import NotParabolic, TorsionViolation
from orbisymp.rep.algebra import DIM, ad_matrix, from_coords, to_coords, torsion_average
from orbisymp.rep.evaluate import evaluate
from orbisymp.rep.models import GroupRep
from orbisymp.utils.settings import get_settings
from orbisymp.words import Generator, Word

from .extend import extend
from .models import Cocycle


def solve_T(rep: GroupRep, u: Cocycle, index: int) -> np.ndarray:
    """Averaged T_i with Ad_s T_i - T_i = u(s_i); raises TorsionViolation when u(s_i) is not torsion."""

    generator = Generator("s", index)
    s = rep.matrix(generator)
    u_s = u.values[generator]
    T = torsion_average(s, u_s, rep.signature.cone_orders[index - 1])
    residual = float(np.linalg.norm(s @ T @ rep.matrix(generator, -1) - T - u_s))
    scale = max(1.0, float(np.linalg.norm(u_s)))
    if residual > get_settings().torsion_tol * scale:
        raise TorsionViolation(f"u(s{index}) leaves the torsion subspace (residual {residual:.3e})")
    return T


def solve_X(rep: GroupRep, u: Cocycle, word: Word) -> np.ndarray:
    """Minimum-norm X with (Ad_rho(word) - 1) X = u(word); raises NotParabolic above tolerance."""

    settings = get_settings()
    operator = ad_matrix(evaluate(rep, word)) - np.eye(DIM)
    target = to_coords(extend(rep, u, word))
    solution, *_ = np.linalg.lstsq(operator, target, rcond=settings.rank_tol)
    # one step of iterative refinement
    correction, *_ = np.linalg.lstsq(operator, target - operator @ solution, rcond=settings.rank_tol)
    solution = solution + correction
    residual = float(np.linalg.norm(operator @ solution - target))
    scale = max(1.0, float(np.linalg.norm(target)))
    if residual > settings.parabolic_tol * scale:
        raise NotParabolic(f"u({word}) is not in im(Ad - 1) (residual {residual:.3e})")
    return from_coords(solution)
