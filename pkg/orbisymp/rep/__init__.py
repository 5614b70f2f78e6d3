from .algebra import (
    SL3_BASIS,
    SO21_BASIS,
    ad_matrix,
    adjoint,
    from_coords,
    random_lie_element,
    to_coords,
    torsion_average,
    trace_pairing,
)
from .deform import deform
from .evaluate import act, check_relations, evaluate, pullback, relation_floor, relation_residual, relators
from .fuchsian import fuchsian_cone_sphere, fuchsian_surface, fuchsian_triangle, pants_representation
from .invariants import classify, goldman_derivative, invariant_value
from .io import load_rep, rep_from_payload, rep_to_payload, save_rep
from .models import FuchsianSeed, GroupRep, HypInvariants, RepFile
from .newton import newton_refine

__all__ = [
    "FuchsianSeed",
    "GroupRep",
    "HypInvariants",
    "RepFile",
    "SL3_BASIS",
    "SO21_BASIS",
    "act",
    "ad_matrix",
    "adjoint",
    "check_relations",
    "classify",
    "deform",
    "evaluate",
    "from_coords",
    "fuchsian_cone_sphere",
    "fuchsian_surface",
    "fuchsian_triangle",
    "goldman_derivative",
    "invariant_value",
    "load_rep",
    "newton_refine",
    "pants_representation",
    "pullback",
    "random_lie_element",
    "relation_floor",
    "relation_residual",
    "relators",
    "rep_from_payload",
    "rep_to_payload",
    "save_rep",
    "to_coords",
    "torsion_average",
    "trace_pairing",
]
