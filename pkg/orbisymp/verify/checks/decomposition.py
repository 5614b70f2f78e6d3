from __future__ import annotations

from functools import partial

from orbisymp.cocycle.spaces import mayer_vietoris_ranks, z1_par_basis
from orbisymp.orbifold.signature import classify_piece
from orbisymp.symplectic.decomposition import decomposition_residual
from orbisymp.verify.corpus import SPLITTINGS, corpus_rep, corpus_splitting
from orbisymp.verify.models import Check, CheckContext


def check_decomposition(name: str, ctx: CheckContext) -> float:
    rep_name, splitting = corpus_splitting(name)
    rep = corpus_rep(rep_name)
    space = z1_par_basis(rep, splitting.parabolic_words())
    rng = ctx.rng()
    return max(
        decomposition_residual(rep, splitting, space.random(rng), space.random(rng)) for _ in range(ctx.count(20))
    )


def check_mayer_vietoris(name: str, ctx: CheckContext) -> float:
    rep_name, splitting = corpus_splitting(name)
    ranks = mayer_vietoris_ranks(corpus_rep(rep_name), splitting)
    return float(abs(ranks.ambient - ranks.total))


def check_piece_dimensions(name: str, ctx: CheckContext) -> float:
    """Elementary pieces against their expected fixed-boundary deformation dimension."""

    rep_name, splitting = corpus_splitting(name)
    ranks = mayer_vietoris_ranks(corpus_rep(rep_name), splitting)
    mismatches = 0
    for piece, dimension in zip(splitting.pieces, ranks.pieces):
        kind = classify_piece(piece.signature)
        if kind is not None:
            mismatches += dimension != kind.expected_dimension
    return float(mismatches)


CHECKS = []
for _name in SPLITTINGS:
    CHECKS += [
        Check(f"decomposition.residual.{_name}", "decomposition", 1e-8, partial(check_decomposition, _name)),
        Check(f"decomposition.mayer_vietoris.{_name}", "decomposition", 0.0, partial(check_mayer_vietoris, _name)),
    ]
CHECKS += [
    Check(
        f"decomposition.piece_dimensions.{_name}",
        "decomposition",
        0.0,
        partial(check_piece_dimensions, _name),
    )
    for _name in ("genus2_pants", "s2_2233_full")
]
