from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

from orbisymp.cocycle.extend import extend, extend_ring
from orbisymp.cocycle.models import Cocycle
from orbisymp.cocycle.solvers import solve_T, solve_X
from orbisymp.rep.algebra import trace_pairing
from orbisymp.rep.evaluate import evaluate
from orbisymp.rep.models import GroupRep
from orbisymp.words import Generator, Word, bar_involution, canonical_relator, fox_derivative, fundamental_two_chain

from .models import PairingReport


def _corrections(rep: GroupRep, u: Cocycle) -> Tuple[Dict[Generator, np.ndarray], Dict[Generator, np.ndarray]]:
    sig = rep.signature
    torsion = {Generator("s", i): solve_T(rep, u, i) for i in range(1, sig.cone_count + 1)}
    boundary = {
        Generator("z", j): solve_X(rep, u, Word.of(Generator("z", j))) for j in range(1, sig.boundary + 1)
    }
    return torsion, boundary


def omega_closed_form(rep: GroupRep, u: Cocycle, v: Cocycle) -> float:
    """
    -sum_v Tr(u(bar dr/dv) v(v)) - sum_i Tr(T_i v(s_i)) - sum_j Tr(X_j v(z_j)),

    with T_i and X_j solved from u.
    """

    relator = canonical_relator(rep.signature)
    total = 0.0
    for generator in rep.generators():
        weight = bar_involution(fox_derivative(relator, generator))
        total -= trace_pairing(extend_ring(rep, u, weight), v.values[generator])
    torsion, boundary = _corrections(rep, u)
    for generator, T in torsion.items():
        total -= trace_pairing(T, v.values[generator])
    for generator, X in boundary.items():
        total -= trace_pairing(X, v.values[generator])
    return total


def omega_cycle(rep: GroupRep, u: Cocycle, v: Cocycle) -> float:
    """Cup product of u and v evaluated on the relative fundamental 2-chain, minus the boundary terms."""

    total = 0.0
    for (left, right), coefficient in fundamental_two_chain(rep.signature).items():
        a = extend(rep, u, left)
        from_left = evaluate(rep, left)
        b = from_left @ extend(rep, v, right) @ np.linalg.inv(from_left)
        total += float(coefficient) * trace_pairing(a, b)
    _, boundary = _corrections(rep, u)
    for generator, X in boundary.items():
        total -= trace_pairing(X, v.values[generator])
    return total


def pairing_report(rep: GroupRep, u: Cocycle, v: Cocycle) -> PairingReport:
    closed = omega_closed_form(rep, u, v)
    cycle = omega_cycle(rep, u, v)
    torsion, boundary = _corrections(rep, u)
    corrections: Dict[str, List[float]] = {}
    for generator, value in {**torsion, **boundary}.items():
        name = f"T{generator.index}" if generator.kind == "s" else f"X{generator.index}"
        corrections[name] = [float(x) for x in value.ravel()]
    return PairingReport(
        value_closed=closed,
        value_cycle=cycle,
        discrepancy=abs(closed - cycle),
        corrections=corrections,
    )
