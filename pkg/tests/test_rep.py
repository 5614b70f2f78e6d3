from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest
from scipy.linalg import expm

from orbisymp.cocycle import h1_par_complement
from orbisymp.errors import InvalidSignature, NewtonDiverged, NotHyperbolic, RelationViolation
from orbisymp.orbifold import OrbifoldSignature, SeparatingCurve, apply_splitting
from orbisymp.rep import (
    SL3_BASIS,
    SO21_BASIS,
    FuchsianSeed,
    GroupRep,
    ad_matrix,
    adjoint,
    check_relations,
    classify,
    deform,
    evaluate,
    from_coords,
    fuchsian_cone_sphere,
    fuchsian_surface,
    fuchsian_triangle,
    goldman_derivative,
    invariant_value,
    load_rep,
    newton_refine,
    pullback,
    random_lie_element,
    relation_floor,
    relation_residual,
    save_rep,
    to_coords,
    torsion_average,
)
from orbisymp.rep.algebra import J
from orbisymp.rep.fuchsian import sl2_to_so21
from orbisymp.rep.newton import accepted_residual
from orbisymp.words import Generator, Word


def test_lie_algebra_bases_are_orthonormal() -> None:
    gram = np.einsum("aij,bij->ab", SL3_BASIS, SL3_BASIS)
    assert np.allclose(gram, np.eye(8), atol=1e-14)
    assert all(abs(np.trace(B)) < 1e-14 for B in SL3_BASIS)
    for B in SO21_BASIS:
        assert np.allclose(B.T @ J + J @ B, 0.0, atol=1e-14)


def test_coordinates_round_trip(rng: np.random.Generator) -> None:
    X = random_lie_element(rng)
    assert np.allclose(from_coords(to_coords(X)), X, atol=1e-13)


def test_ad_matrix_matches_conjugation(rng: np.random.Generator) -> None:
    g = expm(random_lie_element(rng, 0.5))
    X = random_lie_element(rng)
    assert np.allclose(ad_matrix(g) @ to_coords(X), to_coords(g @ X @ np.linalg.inv(g)), atol=1e-12)
    assert np.allclose(adjoint(g, X), from_coords(ad_matrix(g) @ to_coords(X)), atol=1e-12)


def test_torsion_average_solves_cone_equation(s2_237_rep: GroupRep, rng: np.random.Generator) -> None:
    for index, order in enumerate((2, 3, 7), start=1):
        s = s2_237_rep.matrix(Generator("s", index))
        X = random_lie_element(rng)
        u_s = X - s @ X @ np.linalg.inv(s)
        T = torsion_average(s, u_s, order)
        assert np.allclose(s @ T @ np.linalg.inv(s) - T, u_s, atol=1e-12)


def test_triangle_representation_has_exact_orders() -> None:
    rep = fuchsian_triangle(2, 3, 7)
    assert relation_residual(rep) < 1e-10
    s3 = rep.matrix(Generator("s", 3))
    assert abs(np.trace(s3) - (1.0 + 2.0 * math.cos(2.0 * math.pi / 7))) < 1e-12
    for m in rep.matrices.values():
        assert np.allclose(m.T @ J @ m, J, atol=1e-12)


@pytest.mark.parametrize("orders", [(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 2, 50)])
def test_triangle_rejects_non_hyperbolic_orders(orders: tuple) -> None:
    with pytest.raises(InvalidSignature):
        fuchsian_triangle(*orders)


def test_cone_sphere_residual(s2_2233_rep: GroupRep) -> None:
    assert relation_residual(s2_2233_rep) < 1e-10


def test_seeded_cone_sphere_is_refined() -> None:
    rep = fuchsian_cone_sphere((2, 2, 3, 3), FuchsianSeed(radius_scale=1.1, jitter=0.01, seed=3))
    assert relation_residual(rep) < 1e-10
    assert rep.max_difference(fuchsian_cone_sphere((2, 2, 3, 3))) > 1e-4


def test_collapsed_centres_make_newton_diverge() -> None:
    with pytest.raises(NewtonDiverged):
        fuchsian_cone_sphere((2, 2, 3, 3), FuchsianSeed(radius_scale=0.0))


def test_surface_seed(genus2_rep: GroupRep) -> None:
    assert relation_residual(genus2_rep) < 1e-10
    for m in genus2_rep.matrices.values():
        assert np.allclose(m.T @ J @ m, J, atol=1e-10)
    separating = evaluate(genus2_rep, Word.parse("x1 y1 x1^-1 y1^-1"))
    assert classify(separating).length < 6.0
    with pytest.raises(InvalidSignature):
        fuchsian_surface(3)


def test_sl2_to_so21_is_a_homomorphism() -> None:
    A = np.array([[2.0, 1.0], [1.0, 1.0]])
    B = np.array([[1.0, 0.5], [0.0, 1.0]])
    image = sl2_to_so21(A)
    assert np.allclose(sl2_to_so21(A @ B), image @ sl2_to_so21(B), atol=1e-12)
    assert np.allclose(image.T @ J @ image, J, atol=1e-12)
    assert np.linalg.det(image) == pytest.approx(1.0)
    assert np.trace(image) == pytest.approx(np.trace(A) ** 2 - 1.0)


def test_newton_recovers_from_a_large_perturbation(genus2_rep: GroupRep) -> None:
    x1 = Generator("x", 1)
    kicked = genus2_rep.with_matrices({x1: expm(0.3 * SL3_BASIS[0]) @ genus2_rep.matrix(x1)})
    assert relation_residual(kicked) > 1e-2
    refined = newton_refine(kicked)
    assert relation_residual(refined) < 1e-10


def test_accepted_residual_follows_the_rounding_floor(pants_rep: GroupRep) -> None:
    assert accepted_residual(pants_rep) >= 1e-10
    stretched = pants_rep.conjugate(np.diag([30.0, 1.0, 1.0 / 30.0]))
    assert relation_floor(stretched) > relation_floor(pants_rep) > 0.0


def test_check_relations_enforces_the_residual_tolerance(genus2_rep: GroupRep) -> None:
    assert check_relations(genus2_rep) == relation_residual(genus2_rep)
    x1 = Generator("x", 1)
    jittered = genus2_rep.with_matrices({x1: expm(1e-6 * SL3_BASIS[2]) @ genus2_rep.matrix(x1)})
    with pytest.raises(RelationViolation) as info:
        check_relations(jittered)
    assert info.value.tolerance == genus2_rep.residual_tol
    with pytest.raises(RelationViolation):
        check_relations(genus2_rep.with_tolerance(1e-30))


def test_classify_diagonal_matrix() -> None:
    invariants = classify(np.diag([4.0, 1.0, 0.25]))
    assert invariants.length == pytest.approx(math.log(16.0))
    assert invariants.bulge == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(invariants.projectors.sum(axis=0), np.eye(3))


@pytest.mark.parametrize(
    "matrix",
    [
        np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
        np.diag([2.0, 2.0, 0.25]),
        np.diag([-2.0, -1.0, 0.5]),
        np.diag([2.0, 1.0, 1.0]),
    ],
    ids=["rotation", "clustered", "negative", "determinant"],
)
def test_classify_rejects_non_hyperbolic(matrix: np.ndarray) -> None:
    with pytest.raises(NotHyperbolic):
        classify(matrix)


def test_invariants_are_conjugation_invariant(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    z1 = pants_rep.matrix(Generator("z", 1))
    g = expm(random_lie_element(rng, 0.3))
    conjugated = g @ z1 @ np.linalg.inv(g)
    for which in ("L", "M"):
        assert invariant_value(conjugated, which) == pytest.approx(invariant_value(z1, which), abs=1e-10)


@pytest.mark.parametrize("which", ["L", "M"])
def test_goldman_derivative_matches_finite_difference(
    pants_rep: GroupRep, rng: np.random.Generator, which: str
) -> None:
    m = pants_rep.matrix(Generator("z", 1))
    X = random_lie_element(rng)
    h = 1e-5
    numeric = (invariant_value(m @ expm(h * X), which) - invariant_value(m @ expm(-h * X), which)) / (2 * h)
    assert numeric == pytest.approx(np.trace(goldman_derivative(m, which) @ X), abs=1e-6)
    assert abs(np.trace(goldman_derivative(m, which))) < 1e-12


def test_goldman_derivative_rejects_unknown_function(pants_rep: GroupRep) -> None:
    with pytest.raises(ValueError):
        goldman_derivative(pants_rep.matrix(Generator("z", 1)), "Q")


def test_evaluate_multiplies_left_to_right(genus2_rep: GroupRep) -> None:
    x1, y1 = genus2_rep.matrix(Generator("x", 1)), genus2_rep.matrix(Generator("y", 1))
    assert np.allclose(evaluate(genus2_rep, Word.parse("x1 y1^-1")), x1 @ np.linalg.inv(y1))
    assert np.allclose(evaluate(genus2_rep, Word.identity()), np.eye(3))


def test_pullback_to_pieces_satisfies_piece_relators(genus2_rep: GroupRep) -> None:
    splitting = apply_splitting(genus2_rep.signature, [SeparatingCurve(cut=1)])
    for piece in splitting.pieces:
        assert relation_residual(pullback(genus2_rep, piece.signature, piece.inclusion)) < 1e-10


def test_deform_at_zero_time_returns_input(genus2_rep: GroupRep) -> None:
    values = {g: np.zeros((3, 3)) for g in genus2_rep.generators()}
    assert deform(genus2_rep, values, 0.0) is genus2_rep


def test_deform_along_coboundary_stays_on_variety(s2_2233_rep: GroupRep, rng: np.random.Generator) -> None:
    X = random_lie_element(rng)
    values = {g: X - m @ X @ np.linalg.inv(m) for g, m in s2_2233_rep.matrices.items()}
    moved = deform(s2_2233_rep, values, 0.1)
    assert relation_residual(moved) < 1e-10
    assert moved.max_difference(s2_2233_rep) > 1e-3


@pytest.mark.parametrize("t", [1e-3, 1e-2])
def test_deform_surface_along_h1(genus2_rep: GroupRep, t: float) -> None:
    u = h1_par_complement(genus2_rep).cocycle(0)
    moved = deform(genus2_rep, u, t)
    assert relation_residual(moved) < 1e-10
    assert moved.max_difference(genus2_rep) > 1e-3 * t


def test_deform_accepts_cocycle_and_mapping_alike(s2_2233_rep: GroupRep) -> None:
    u = h1_par_complement(s2_2233_rep).cocycle(0)
    from_cocycle = deform(s2_2233_rep, u, 0.05)
    from_mapping = deform(s2_2233_rep, dict(u.values), 0.05)
    assert from_cocycle.max_difference(from_mapping) == 0.0


def test_group_rep_rejects_missing_generators() -> None:
    with pytest.raises(ValueError, match="missing"):
        GroupRep(OrbifoldSignature(boundary=3), {Generator("z", 1): np.eye(3)})


def test_rep_file_round_trip(tmp_path: Path, pants_rep: GroupRep) -> None:
    path = save_rep(pants_rep, tmp_path / "reps" / "pants.json")
    loaded = load_rep(path)
    assert loaded.signature == pants_rep.signature
    assert loaded.max_difference(pants_rep) == 0.0
    assert json.loads(path.read_text(encoding="utf-8"))["residual"] < 1e-10


def test_rep_file_rejects_bad_determinant(tmp_path: Path) -> None:
    payload = {
        "signature": {"genus": 0, "boundary": 3, "cone_orders": []},
        "generators": {
            "z1": [2.0, 0, 0, 0, 1, 0, 0, 0, 1],
            "z2": [1.0, 0, 0, 0, 1, 0, 0, 0, 1],
            "z3": [1.0, 0, 0, 0, 1, 0, 0, 0, 1],
        },
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(ValueError, match="determinant"):
        load_rep(path)


def test_rep_file_rejects_broken_relator(tmp_path: Path) -> None:
    payload = {
        "signature": {"genus": 0, "boundary": 3, "cone_orders": []},
        "generators": {
            "z1": [2.0, 0, 0, 0, 1, 0, 0, 0, 0.5],
            "z2": [1.0, 0, 0, 0, 1, 0, 0, 0, 1],
            "z3": [1.0, 0, 0, 0, 1, 0, 0, 0, 1],
        },
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(ValueError, match="relators"):
        load_rep(path)
