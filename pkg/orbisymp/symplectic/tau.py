from __future__ import annotations

import numpy as np

from orbisymp.cocycle.extend import extend
from orbisymp.cocycle.models import Cocycle
from orbisymp.cocycle.solvers import solve_X
from orbisymp.rep.algebra import DIM, ad_matrix, from_coords, to_coords, trace_pairing
from orbisymp.rep.evaluate import evaluate
from orbisymp.rep.invariants import classify
from orbisymp.rep.models import GroupRep
from orbisymp.utils.settings import get_settings
from orbisymp.words import Generator, Word


def tau_form(p: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """tau(Ad_p X - X, Ad_p Y - Y) = (Tr(X Ad_p Y) - Tr(Y Ad_p X)) / 2"""

    classify(p)
    p_inv = np.linalg.inv(p)
    return 0.5 * (trace_pairing(X, p @ Y @ p_inv) - trace_pairing(Y, p @ X @ p_inv))


def tau_on_image(p: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """
    tau evaluated directly on image vectors A, B of Ad_p - 1.

    With X any preimage of A, the value is Tr((X + Ad_p X) B) / 2; the minimum-norm
    preimage is used and centralizer ambiguity drops out.
    """

    classify(p)
    operator = ad_matrix(p) - np.eye(DIM)
    coords, *_ = np.linalg.lstsq(operator, to_coords(A), rcond=get_settings().rank_tol)
    X = from_coords(coords)
    return 0.5 * trace_pairing(X + p @ X @ np.linalg.inv(p), B)


def boundary_term_identity_check(rep: GroupRep, u: Cocycle, v: Cocycle) -> float:
    """
    Sum over boundary components of the gap between the antisymmetrised boundary
    corrections and tau on (u(z_j), v(z_j)).
    """

    total = 0.0
    for j in range(1, rep.signature.boundary + 1):
        word = Word.of(Generator("z", j))
        z = evaluate(rep, word)
        X = solve_X(rep, u, word)
        Y = solve_X(rep, v, word)
        z_inv = np.linalg.inv(z)
        corrections = 0.5 * (trace_pairing(X, z @ Y @ z_inv) - trace_pairing(Y, z @ X @ z_inv))
        total += abs(corrections - tau_on_image(z, extend(rep, u, word), extend(rep, v, word)))
    return total
