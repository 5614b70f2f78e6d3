from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, Tuple

import numpy as np

from orbisymp.cocycle.spaces import h1_par_complement
from orbisymp.orbifold.models import (
    FullSuborbifoldCurve,
    NonSeparatingCurve,
    OrbifoldSignature,
    SeparatingCurve,
    SplittingSpec,
)
from orbisymp.orbifold.splitting import apply_splitting, pants_decomposition
from orbisymp.rep.deform import deform
from orbisymp.rep.evaluate import check_relations
from orbisymp.rep.fuchsian import fuchsian_cone_sphere, fuchsian_surface, fuchsian_triangle, pants_representation
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger

LOGGER = get_logger(__name__)

DEFORMATION_SEED = 2024
DEFORMATION_SCALE = 0.05

CLOSED = ("genus2", "genus2_deformed", "s2_2233")
ALL = CLOSED + ("s2_237", "pants")

EXPECTED_H1 = {"genus2": 16, "genus2_deformed": 16, "s2_2233": 4, "s2_237": 0}
EXPECTED_H1_PAR = {"pants": 2}


@lru_cache(maxsize=None)
def _genus2() -> GroupRep:
    return fuchsian_surface(2)


@lru_cache(maxsize=None)
def _genus2_deformed() -> GroupRep:
    base = _genus2()
    space = h1_par_complement(base)
    rng = np.random.default_rng(DEFORMATION_SEED)
    u = space.combination(DEFORMATION_SCALE * rng.standard_normal(space.dimension))
    return deform(base, u, 1.0)


@lru_cache(maxsize=None)
def _s2_2233() -> GroupRep:
    return fuchsian_cone_sphere((2, 2, 3, 3))


@lru_cache(maxsize=None)
def _s2_237() -> GroupRep:
    return fuchsian_triangle(2, 3, 7)


@lru_cache(maxsize=None)
def _pants() -> GroupRep:
    return pants_representation()


_BUILDERS: Dict[str, Callable[[], GroupRep]] = {
    "genus2": _genus2,
    "genus2_deformed": _genus2_deformed,
    "s2_2233": _s2_2233,
    "s2_237": _s2_237,
    "pants": _pants,
}


def corpus_rep(name: str) -> GroupRep:
    """Acceptance representation by name; built once per process, raises RelationViolation above its residual_tol."""

    try:
        builder = _BUILDERS[name]
    except KeyError as exc:
        raise KeyError(f"unknown corpus representation {name!r}; expected one of {sorted(_BUILDERS)}") from exc
    rep = builder()
    residual = check_relations(rep)
    LOGGER.debug(
        "Corpus representation",
        extra={"name": name, "signature": rep.signature.label(), "residual": residual},
    )
    return rep


@lru_cache(maxsize=None)
def corpus_splitting(name: str) -> Tuple[str, SplittingSpec]:
    """Named splittings of corpus orbifolds, returned with the representation they belong to."""

    genus2 = OrbifoldSignature(genus=2)
    cone_sphere = OrbifoldSignature(cone_orders=(2, 2, 3, 3))
    if name == "genus2_separating":
        return "genus2", apply_splitting(genus2, [SeparatingCurve(cut=1)])
    if name == "genus2_nonseparating":
        return "genus2", apply_splitting(genus2, [NonSeparatingCurve()])
    if name == "genus2_pants":
        return "genus2", pants_decomposition(genus2)
    if name == "s2_2233_full":
        return "s2_2233", apply_splitting(cone_sphere, [FullSuborbifoldCurve(cones=(1, 2))])
    raise KeyError(f"unknown corpus splitting {name!r}")


SPLITTINGS = ("genus2_separating", "genus2_nonseparating", "s2_2233_full")
