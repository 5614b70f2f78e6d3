from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np

from orbisymp.cocycle.models import CocycleSpace
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger
from orbisymp.utils.settings import get_settings

from .models import GramReport
from .pairing import omega_closed_form

LOGGER = get_logger(__name__)


def gram_matrix(rep: GroupRep, space: CocycleSpace, threads: Optional[int] = None) -> np.ndarray:
    """Matrix of pairings omega(b_i, b_j) over the basis of ``space``; every entry is evaluated."""

    basis = space.basis
    size = len(basis)
    matrix = np.zeros((size, size))
    pairs = [(i, j) for i in range(size) for j in range(size)]

    def entry(pair: Tuple[int, int]) -> float:
        i, j = pair
        return omega_closed_form(rep, basis[i], basis[j])

    workers = max(1, min(threads or get_settings().threads, len(pairs) or 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for (i, j), value in zip(pairs, pool.map(entry, pairs)):
            matrix[i, j] = value
    return matrix


def gram_report(rep: GroupRep, space: CocycleSpace, threads: Optional[int] = None) -> GramReport:
    matrix = gram_matrix(rep, space, threads)
    if matrix.size == 0:
        return GramReport(matrix=matrix, rank=0, min_singular=0.0, max_singular=0.0, antisymmetry=0.0)
    singular = np.linalg.svd(matrix, compute_uv=False)
    rank = int(np.sum(singular > get_settings().rank_tol * float(singular[0])))
    report = GramReport(
        matrix=matrix,
        rank=rank,
        min_singular=float(singular[-1]),
        max_singular=float(singular[0]),
        antisymmetry=float(np.max(np.abs(matrix + matrix.T))),
    )
    LOGGER.info(
        "Gram matrix",
        extra={
            "dimension": report.dimension,
            "rank": report.rank,
            "min_singular": report.min_singular,
            "antisymmetry": report.antisymmetry,
        },
    )
    return report
