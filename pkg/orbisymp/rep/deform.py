from __future__ import annotations

from typing import TYPE_CHECKING, Dict, Mapping, Union

import numpy as np
from scipy.linalg import expm

from orbisymp.words import Generator

from .algebra import torsion_average
from .models import GroupRep
from .newton import newton_refine

if TYPE_CHECKING:
    from orbisymp.cocycle.models import Cocycle

CochainLike = Union["Cocycle", Mapping[Generator, np.ndarray]]


def _values(u: CochainLike) -> Mapping[Generator, np.ndarray]:
    return u if isinstance(u, Mapping) else u.values


def deform(rep: GroupRep, u: CochainLike, t: float) -> GroupRep:
    """
    Move ``rep`` a time ``t`` along the tangent cocycle ``u``, then refine onto the relation variety.

    Free generators go to exp(t u(v)) rho(v). Cone generators are conjugated by exp(t T)
    with Ad_s T - T = u(s), which keeps their order and has the same first-order tangent.
    """

    if t == 0:
        return rep
    values = _values(u)
    orders = dict(zip((Generator("s", k) for k in range(1, rep.signature.cone_count + 1)), rep.signature.cone_orders))
    matrices: Dict[Generator, np.ndarray] = {}
    for generator in rep.generators():
        m = rep.matrix(generator)
        if generator.kind == "s":
            T = torsion_average(m, values[generator], orders[generator])
            matrices[generator] = expm(-t * T) @ m @ expm(t * T)
        else:
            matrices[generator] = expm(t * values[generator]) @ m
    return newton_refine(rep.with_matrices(matrices), algebra="sl3")
