from __future__ import annotations

from functools import partial

from orbisymp.cocycle.spaces import coboundary_space, h1_dimension, z1_par_basis
from orbisymp.orbifold.models import OrbifoldSignature
from orbisymp.orbifold.signature import dimension_closed, is_elementary
from orbisymp.orbifold.splitting import pants_decomposition
from orbisymp.verify.corpus import EXPECTED_H1, EXPECTED_H1_PAR, corpus_rep
from orbisymp.verify.models import Check, CheckContext

DECOMPOSED = (
    OrbifoldSignature(genus=2),
    OrbifoldSignature(genus=3),
    OrbifoldSignature(cone_orders=(2, 2, 3, 3)),
    OrbifoldSignature(cone_orders=(2, 3, 7)),
    OrbifoldSignature(genus=1, cone_orders=(2, 2, 3)),
    OrbifoldSignature(cone_orders=(2, 2, 2, 2, 2, 2)),
)


def check_h1(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    expected = EXPECTED_H1[name]
    return float(max(abs(h1_dimension(rep) - expected), abs(dimension_closed(rep.signature) - expected)))


def check_h1_par(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    numeric = z1_par_basis(rep).dimension - coboundary_space(rep).dimension
    return float(abs(numeric - EXPECTED_H1_PAR[name]))


def check_pants_counts(ctx: CheckContext) -> float:
    """Mismatches in curve and piece counts, elementarity and Euler characteristic additivity."""

    mismatches = 0
    for sig in DECOMPOSED:
        splitting = pants_decomposition(sig)
        paired = sig.order_two_count // 2
        curves = 3 * sig.genus - 3 + sig.cone_count - paired
        pieces = 2 * sig.genus - 2 + sig.cone_count - paired
        mismatches += splitting.scc_count != curves
        mismatches += splitting.full_count != paired
        mismatches += len(splitting.pieces) != pieces
        mismatches += sum(not is_elementary(piece.signature) for piece in splitting.pieces)
        chi = sum(piece.signature.euler_characteristic() for piece in splitting.pieces)
        mismatches += chi != sig.euler_characteristic()
    return float(mismatches)


CHECKS = [Check(f"dims.h1.{name}", "dims", 0.0, partial(check_h1, name)) for name in EXPECTED_H1]
CHECKS += [Check(f"dims.h1_par.{name}", "dims", 0.0, partial(check_h1_par, name)) for name in EXPECTED_H1_PAR]
CHECKS.append(Check("dims.pants_decomposition", "dims", 0.0, check_pants_counts))
