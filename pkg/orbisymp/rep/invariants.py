from __future__ import annotations

from typing import Literal, Optional

import numpy as np

from orbisymp.errors import NotHyperbolic
from orbisymp.utils.settings import get_settings

from .models import HypInvariants

Which = Literal["L", "M"]

DET_TOL = 1e-6


def classify(m: np.ndarray, tol: Optional[float] = None) -> HypInvariants:
    """
    Invariants of a Hyp+ matrix: real spectrum l1 > l2 > l3 > 0.

    Raises NotHyperbolic for complex, non-positive or clustered spectra; ``tol`` is the
    minimum relative gap and defaults to the configured eigen_gap_tol.
    """

    gap_tol = get_settings().eigen_gap_tol if tol is None else tol
    det = float(np.linalg.det(m))
    if abs(det - 1.0) > DET_TOL:
        raise NotHyperbolic(f"determinant {det:.3e} is not 1")
    values, vectors = np.linalg.eig(m)
    scale = float(np.max(np.abs(values)))
    if float(np.max(np.abs(values.imag))) > gap_tol * scale:
        raise NotHyperbolic("complex spectrum")
    values = values.real
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = vectors[:, order].real
    if values[-1] <= 0:
        raise NotHyperbolic(f"non-positive eigenvalue {values[-1]:.3e}")
    gap = float(min(values[0] - values[1], values[1] - values[2])) / scale
    if gap < gap_tol:
        raise NotHyperbolic(f"clustered spectrum, relative gap {gap:.3e}")
    dual = np.linalg.inv(vectors)
    projectors = np.array([np.outer(vectors[:, i], dual[i, :]) for i in range(3)])
    return HypInvariants(
        length=float(np.log(values[0] / values[2])),
        bulge=float(np.log(values[1])),
        eigenvalues=values,
        projectors=projectors,
    )


def goldman_derivative(m: np.ndarray, which: Which) -> np.ndarray:
    """Traceless f# with d/dt f(m exp tX) = Tr(f#(m) X) at t = 0, for f = length (L) or bulge (M)."""

    invariants = classify(m)
    if which == "L":
        return invariants.projectors[0] - invariants.projectors[2]
    if which == "M":
        return invariants.projectors[1] - np.eye(3) / 3.0
    raise ValueError(f"unknown Goldman function {which!r}")


def invariant_value(m: np.ndarray, which: Which) -> float:
    invariants = classify(m)
    return invariants.length if which == "L" else invariants.bulge
