from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import null_space, orth

from orbisymp.errors import DegenerateSpectrum, RankDeficient
from orbisymp.orbifold.models import SplittingSpec
from orbisymp.orbifold.splitting import flow_direction_count
from orbisymp.rep.algebra import DIM, SL3_BASIS, ad_matrix, to_coords
from orbisymp.rep.evaluate import evaluate, pullback
from orbisymp.rep.invariants import classify
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger
from orbisymp.utils.settings import get_settings
from orbisymp.words import Generator, Word, canonical_relator, fox_derivative

from .models import Cocycle, CocycleSpace, MayerVietorisRanks, Subspace

LOGGER = get_logger(__name__)

# a kept singular value must exceed the largest discarded one by this factor
GAP_FACTOR = 1e3


def _rank_tol() -> float:
    return get_settings().rank_tol


def fox_block(rep: GroupRep, word: Word, generator: Generator) -> np.ndarray:
    """8x8 block of u(v) -> (dw/dv) . u(v)."""

    block = np.zeros((DIM, DIM))
    for term, coefficient in fox_derivative(word, generator).terms.items():
        g = evaluate(rep, term)
        block += float(coefficient) * ad_matrix(g, np.linalg.inv(g))
    return block


def word_map(rep: GroupRep, word: Word) -> np.ndarray:
    """8 x 8n matrix of u -> u(word) on stacked generator coordinates."""

    return np.hstack([fox_block(rep, word, g) for g in rep.generators()])


def relator_map(rep: GroupRep) -> np.ndarray:
    return word_map(rep, canonical_relator(rep.signature))


def torsion_map(rep: GroupRep) -> np.ndarray:
    """Rows (1 + Ad_s + ... + Ad_s^(r-1)) u(s) = 0 for each cone generator."""

    generators = rep.generators()
    rows: List[np.ndarray] = []
    for index, order in enumerate(rep.signature.cone_orders, start=1):
        block = np.zeros((DIM, DIM * len(generators)))
        position = generators.index(Generator("s", index))
        block[:, position * DIM : (position + 1) * DIM] = _power_sum(rep.matrix(Generator("s", index)), order)
        rows.append(block)
    if not rows:
        return np.zeros((0, DIM * len(generators)))
    return np.vstack(rows)


def _power_sum(s: np.ndarray, order: int) -> np.ndarray:
    ad = ad_matrix(s)
    total = np.zeros((DIM, DIM))
    power = np.eye(DIM)
    for _ in range(order):
        total += power
        power = ad @ power
    return total


def _equilibrated(matrix: np.ndarray) -> np.ndarray:
    """Rows scaled to unit norm; rows below rank_tol of the largest are dropped. The kernel is unchanged."""

    if matrix.size == 0:
        return matrix
    norms = np.linalg.norm(matrix, axis=1)
    largest = float(np.max(norms))
    if largest == 0.0:
        return matrix[:0]
    keep = norms > _rank_tol() * largest
    return matrix[keep] / norms[keep, None]


def _refined(matrix: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """One least-squares correction of an approximate kernel basis, re-orthonormalized."""

    if kernel.shape[1] == 0 or matrix.shape[0] == 0:
        return kernel
    correction, *_ = np.linalg.lstsq(matrix, matrix @ kernel, rcond=_rank_tol())
    basis, _ = np.linalg.qr(kernel - correction)
    return basis


def _checked_kernel(matrix: np.ndarray, what: str) -> np.ndarray:
    """Orthonormal kernel basis; refuses to decide when no singular-value gap separates it."""

    tol = _rank_tol()
    if matrix.size == 0:
        return np.eye(matrix.shape[1])
    singular = np.linalg.svd(matrix, compute_uv=False)
    scale = float(singular[0]) if singular.size else 0.0
    if scale == 0.0:
        return np.eye(matrix.shape[1])
    kept = singular[singular > tol * scale]
    dropped = singular[singular <= tol * scale]
    if dropped.size and kept.size and float(kept[-1]) < GAP_FACTOR * float(dropped[0]):
        raise DegenerateSpectrum(
            f"{what}: no singular-value gap between {float(kept[-1]):.3e} and {float(dropped[0]):.3e}"
        )
    return _refined(matrix, null_space(matrix, rcond=tol))


def _expect(space: CocycleSpace, expected: int) -> CocycleSpace:
    if space.dimension != expected:
        raise RankDeficient(
            f"{space.kind} of {space.rep.signature.label()} has dimension {space.dimension}, expected {expected}"
        )
    return space


def image_subspace(m: np.ndarray) -> Subspace:
    """im(Ad_m - 1) without any hyperbolicity check; m within rank_tol of the identity gives the zero subspace."""

    operator = ad_matrix(m) - np.eye(DIM)
    if float(np.max(np.abs(operator))) <= _rank_tol():
        return Subspace(np.zeros((DIM, 0)))
    return Subspace(orth(operator, rcond=_rank_tol()))


def centralizer_subspace(m: np.ndarray) -> Subspace:
    return Subspace(null_space(ad_matrix(m) - np.eye(DIM), rcond=_rank_tol()))


def boundary_image_subspace(rep: GroupRep, word: Word) -> Subspace:
    """
    im(1 - Ad_rho(word)) for a peripheral element.

    A trivial holonomy gives the zero subspace before any spectral check; every other
    holonomy must be Hyp+ and raises NotHyperbolic otherwise.
    """

    m = evaluate(rep, word)
    image = image_subspace(m)
    if image.dimension == 0:
        return image
    classify(m)
    return image


def torsion_subspace(rep: GroupRep, index: int) -> Subspace:
    """ker(1 + Ad_s + ... + Ad_s^(r-1)) for cone generator s_index."""

    order = rep.signature.cone_orders[index - 1]
    operator = _power_sum(rep.matrix(Generator("s", index)), order)
    kernel = _checked_kernel(operator, f"torsion subspace of s{index}")
    if kernel.shape[1] == 0:
        raise DegenerateSpectrum(f"torsion subspace of s{index} is zero; is rho(s{index}) of order {order}?")
    return Subspace(kernel)


def parabolic_rows(rep: GroupRep, word: Word) -> np.ndarray:
    """Rows Q^T (u -> u(word)), Q spanning the complement of im(Ad - 1)."""

    image = boundary_image_subspace(rep, word)
    if image.dimension == 0:
        complement = np.eye(DIM)
    else:
        complement = null_space(image.basis.T)
    return complement.T @ word_map(rep, word)


def coboundary_matrix(rep: GroupRep) -> np.ndarray:
    """8n x 8 matrix of X -> dX."""

    columns = []
    for B in SL3_BASIS:
        columns.append(
            np.concatenate([to_coords(rep.matrix(g) @ B @ rep.matrix(g, -1) - B) for g in rep.generators()])
        )
    return np.array(columns).T


def expected_z1_dimension(rep: GroupRep) -> int:
    """8n - 8 - sum_i (8 - dim t_i): the relator map is onto sl3 whenever H0 vanishes."""

    lost = sum(DIM - torsion_subspace(rep, index).dimension for index in range(1, rep.signature.cone_count + 1))
    return DIM * len(rep.generators()) - DIM - lost


def z1_basis(rep: GroupRep) -> CocycleSpace:
    """Orthonormal basis of Z1; raises RankDeficient when its dimension is not ``expected_z1_dimension``."""

    constraints = _equilibrated(np.vstack([relator_map(rep), torsion_map(rep)]))
    kernel = _checked_kernel(constraints, "Z1")
    space = CocycleSpace(rep=rep, kind="Z1", matrix=kernel)
    LOGGER.debug(
        "Computed cocycle space",
        extra={"kind": "Z1", "signature": rep.signature.label(), "dimension": space.dimension},
    )
    return _expect(space, expected_z1_dimension(rep))


def z1_par_basis(rep: GroupRep, parabolic_words: Optional[Sequence[Word]] = None) -> CocycleSpace:
    """
    Cocycles with u(w) in im(Ad_rho(w) - 1) for every listed word; defaults to the boundary generators.

    Computed inside Z1 as the kernel of the restricted parabolic rows. Each word removes the
    rank of its own rows on Z1; RankDeficient is raised when the words are not independent.
    """

    words = list(boundary_words(rep) if parabolic_words is None else parabolic_words)
    z1 = z1_basis(rep)
    if not words:
        return CocycleSpace(rep=rep, kind="Z1_par", matrix=z1.matrix)
    restricted = [parabolic_rows(rep, word) @ z1.matrix for word in words]
    removed = sum(
        z1.dimension - _checked_kernel(_equilibrated(rows), f"parabolic rows of {word}").shape[1]
        for word, rows in zip(words, restricted)
    )
    inner = _checked_kernel(_equilibrated(np.vstack(restricted)), "Z1_par")
    space = CocycleSpace(rep=rep, kind="Z1_par", matrix=z1.matrix @ inner, words=tuple(words))
    LOGGER.debug(
        "Computed cocycle space",
        extra={"kind": "Z1_par", "signature": rep.signature.label(), "dimension": space.dimension},
    )
    return _expect(space, z1.dimension - removed)


def boundary_words(rep: GroupRep) -> List[Word]:
    return [Word.of(Generator("z", j)) for j in range(1, rep.signature.boundary + 1)]


def coboundary_space(rep: GroupRep) -> CocycleSpace:
    matrix = coboundary_matrix(rep)
    singular = np.linalg.svd(matrix, compute_uv=False)
    rank = int(np.sum(singular > _rank_tol() * float(singular[0])))
    if rank < DIM:
        raise RankDeficient(f"coboundary map has rank {rank} < {DIM}; rho has a non-trivial centralizer")
    return CocycleSpace(rep=rep, kind="B1", matrix=orth(matrix))


def h1_par_complement(rep: GroupRep, parabolic_words: Optional[Sequence[Word]] = None) -> CocycleSpace:
    """Orthogonal complement of B1 inside Z1_par: representatives of H1_par."""

    z = z1_par_basis(rep, parabolic_words)
    b = coboundary_space(rep)
    inner = null_space(b.matrix.T @ z.matrix, rcond=_rank_tol())
    complement = z.matrix @ inner
    expected = z.dimension - b.dimension
    if complement.shape[1] != expected:
        raise RankDeficient(
            f"H1_par complement has dimension {complement.shape[1]}, expected {z.dimension} - {b.dimension}"
        )
    LOGGER.info(
        "Computed H1_par representatives",
        extra={"signature": rep.signature.label(), "z1_par": z.dimension, "h1_par": expected},
    )
    return CocycleSpace(rep=rep, kind="H1_par_complement", matrix=complement, words=z.words)


def h1_dimension(rep: GroupRep) -> int:
    return z1_basis(rep).dimension - coboundary_space(rep).dimension


def project_cochain(space: CocycleSpace, cochain: Cocycle) -> Cocycle:
    """Orthogonal projection of an approximate tangent cochain onto ``space``."""

    coords = space.matrix @ (space.matrix.T @ cochain.coords())
    return Cocycle.from_coords(space.rep.signature, coords)


def mayer_vietoris_ranks(rep: GroupRep, splitting: SplittingSpec) -> MayerVietorisRanks:
    """Rank bookkeeping of the short exact sequence attached to a splitting."""

    ambient = z1_par_basis(rep, splitting.parabolic_words()).dimension - coboundary_space(rep).dimension
    pieces = []
    for piece in splitting.pieces:
        local = pullback(rep, piece.signature, piece.inclusion)
        pieces.append(z1_par_basis(local).dimension - coboundary_space(local).dimension)
    ranks = MayerVietorisRanks(
        ambient=ambient, pieces=tuple(pieces), flow_directions=flow_direction_count(splitting)
    )
    LOGGER.info(
        "Mayer-Vietoris ranks",
        extra={"ambient": ranks.ambient, "pieces": list(ranks.pieces), "flows": ranks.flow_directions},
    )
    return ranks
