from .extend import coboundary, cocycle_residual, extend, extend_ring, restrict
from .io import cocycle_from_payload, cocycle_to_payload, load_cocycle, save_cocycle
from .models import Cocycle, CocycleFile, CocycleSpace, MayerVietorisRanks, Subspace
from .solvers import solve_T, solve_X
from .spaces import (
    boundary_image_subspace,
    boundary_words,
    centralizer_subspace,
    coboundary_matrix,
    coboundary_space,
    expected_z1_dimension,
    h1_dimension,
    h1_par_complement,
    image_subspace,
    mayer_vietoris_ranks,
    project_cochain,
    relator_map,
    torsion_subspace,
    word_map,
    z1_basis,
    z1_par_basis,
)

__all__ = [
    "Cocycle",
    "CocycleFile",
    "CocycleSpace",
    "MayerVietorisRanks",
    "Subspace",
    "boundary_image_subspace",
    "boundary_words",
    "centralizer_subspace",
    "coboundary",
    "coboundary_matrix",
    "coboundary_space",
    "cocycle_from_payload",
    "cocycle_residual",
    "cocycle_to_payload",
    "expected_z1_dimension",
    "extend",
    "extend_ring",
    "h1_dimension",
    "h1_par_complement",
    "image_subspace",
    "load_cocycle",
    "mayer_vietoris_ranks",
    "project_cochain",
    "relator_map",
    "restrict",
    "save_cocycle",
    "solve_T",
    "solve_X",
    "torsion_subspace",
    "word_map",
    "z1_basis",
    "z1_par_basis",
]
