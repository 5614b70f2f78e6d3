from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from orbisymp.cocycle import (
    Cocycle,
    boundary_image_subspace,
    centralizer_subspace,
    coboundary,
    coboundary_space,
    cocycle_residual,
    expected_z1_dimension,
    extend,
    h1_dimension,
    h1_par_complement,
    load_cocycle,
    mayer_vietoris_ranks,
    project_cochain,
    restrict,
    save_cocycle,
    solve_T,
    solve_X,
    torsion_subspace,
    z1_basis,
    z1_par_basis,
)
from orbisymp.errors import NotHyperbolic, NotParabolic, RankDeficient, TorsionViolation
from orbisymp.orbifold import OrbifoldSignature
from orbisymp.rep import GroupRep, evaluate, pullback, random_lie_element
from orbisymp.verify.corpus import EXPECTED_H1, corpus_rep, corpus_splitting
from orbisymp.words import Generator, Word


@pytest.mark.parametrize("name", sorted(EXPECTED_H1))
def test_h1_dimension_of_corpus(name: str) -> None:
    assert h1_dimension(corpus_rep(name)) == EXPECTED_H1[name]


def test_pants_h1_par_is_two_dimensional(pants_rep: GroupRep) -> None:
    assert h1_par_complement(pants_rep).dimension == 2
    assert z1_basis(pants_rep).dimension == 16


def test_random_cocycles_satisfy_relators(genus2_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_basis(genus2_rep)
    u = space.random(rng)
    assert cocycle_residual(genus2_rep, u) < 1e-9
    assert max(cocycle_residual(genus2_rep, v) for v in space.basis) < 1e-9


@pytest.mark.parametrize(("name", "dimension"), [("genus2", 24), ("s2_2233", 12), ("s2_237", 8), ("pants", 16)])
def test_z1_has_expected_dimension(name: str, dimension: int) -> None:
    rep = corpus_rep(name)
    assert expected_z1_dimension(rep) == dimension
    assert z1_basis(rep).dimension == dimension


def test_z1_rejects_reducible_representation() -> None:
    diagonals = {"x1": [2.0, 0.5, 1.0], "y1": [4.0, 1.0, 0.25], "x2": [1.0, 2.0, 0.5], "y2": [0.5, 1.0, 2.0]}
    abelian = GroupRep(OrbifoldSignature(genus=2), {Generator.parse(k): np.diag(v) for k, v in diagonals.items()})
    with pytest.raises(RankDeficient):
        z1_basis(abelian)


def test_z1_par_rejects_dependent_words(pants_rep: GroupRep) -> None:
    z1 = Word.of(Generator("z", 1))
    assert z1_par_basis(pants_rep, [z1]).dimension == 14
    with pytest.raises(RankDeficient):
        z1_par_basis(pants_rep, [z1, z1])


def test_trivial_boundary_holonomy_has_zero_image(pants_rep: GroupRep, s2_237_rep: GroupRep) -> None:
    assert boundary_image_subspace(pants_rep, Word.parse("z1 z1^-1")).dimension == 0
    identity = GroupRep(OrbifoldSignature(boundary=3), {Generator("z", j): np.eye(3) for j in (1, 2, 3)})
    assert boundary_image_subspace(identity, Word.of(Generator("z", 1))).dimension == 0
    assert boundary_image_subspace(pants_rep, Word.of(Generator("z", 1))).dimension == 6
    with pytest.raises(NotHyperbolic):
        boundary_image_subspace(s2_237_rep, Word.of(Generator("s", 1)))


def test_cocycle_rule_on_concatenated_words(genus2_rep: GroupRep, rng: np.random.Generator) -> None:
    u = z1_basis(genus2_rep).random(rng)
    g, h = Word.parse("x1 y2^-1"), Word.parse("y1 x2 x1^-1")
    left = extend(genus2_rep, u, g * h)
    m = evaluate(genus2_rep, g)
    right = extend(genus2_rep, u, g) + m @ extend(genus2_rep, u, h) @ np.linalg.inv(m)
    assert np.allclose(left, right, atol=1e-11)
    assert np.allclose(extend(genus2_rep, u, Word.parse("x1 x1^-1")), 0.0)


def test_coboundaries_lie_in_z1(s2_2233_rep: GroupRep, rng: np.random.Generator) -> None:
    du = coboundary(s2_2233_rep, random_lie_element(rng))
    assert cocycle_residual(s2_2233_rep, du) < 1e-10
    projected = project_cochain(z1_basis(s2_2233_rep), du)
    assert (projected - du).norm() < 1e-9 * max(1.0, du.norm())
    assert coboundary_space(s2_2233_rep).dimension == 8


def test_h1_complement_is_orthogonal_to_coboundaries(s2_2233_rep: GroupRep) -> None:
    complement = h1_par_complement(s2_2233_rep)
    b = coboundary_space(s2_2233_rep)
    assert complement.dimension == 4
    assert np.allclose(b.matrix.T @ complement.matrix, 0.0, atol=1e-10)


def test_centralizer_of_hyperbolic_element_is_diagonal() -> None:
    m = np.diag([4.0, 1.0, 0.25])
    centralizer = centralizer_subspace(m)
    assert centralizer.dimension == 2
    for X in centralizer.matrices():
        assert np.allclose(X, np.diag(np.diag(X)), atol=1e-12)
        assert np.allclose(m @ X, X @ m, atol=1e-12)


def test_coboundary_space_needs_trivial_centralizer() -> None:
    identity = GroupRep(OrbifoldSignature(boundary=3), {Generator("z", j): np.eye(3) for j in (1, 2, 3)})
    with pytest.raises(RankDeficient):
        coboundary_space(identity)


def test_solve_T_inverts_torsion_condition(s2_2233_rep: GroupRep, rng: np.random.Generator) -> None:
    u = z1_basis(s2_2233_rep).random(rng)
    for index in range(1, 5):
        s = s2_2233_rep.matrix(Generator("s", index))
        T = solve_T(s2_2233_rep, u, index)
        assert np.allclose(s @ T @ np.linalg.inv(s) - T, u.value(Generator("s", index)), atol=1e-10)
        assert torsion_subspace(s2_2233_rep, index).distance(u.value(Generator("s", index))) < 1e-9


def test_solve_T_rejects_non_torsion_value(s2_237_rep: GroupRep) -> None:
    s1 = s2_237_rep.matrix(Generator("s", 1))
    centralizing = s1 - np.trace(s1) / 3.0 * np.eye(3)
    values = {g: np.zeros((3, 3)) for g in s2_237_rep.generators()}
    values[Generator("s", 1)] = centralizing
    with pytest.raises(TorsionViolation):
        solve_T(s2_237_rep, Cocycle(s2_237_rep.signature, values), 1)


def test_solve_X_on_parabolic_cocycles(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    u = z1_par_basis(pants_rep).random(rng)
    for j in (1, 2, 3):
        word = Word.of(Generator("z", j))
        m = evaluate(pants_rep, word)
        X = solve_X(pants_rep, u, word)
        assert np.allclose(m @ X @ np.linalg.inv(m) - X, extend(pants_rep, u, word), atol=1e-9)


def test_solve_X_rejects_generic_cocycle(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    u = z1_basis(pants_rep).random(rng)
    with pytest.raises(NotParabolic):
        solve_X(pants_rep, u, Word.of(Generator("z", 1)))


def test_restriction_of_coboundary_is_coboundary(genus2_rep: GroupRep, rng: np.random.Generator) -> None:
    _, splitting = corpus_splitting("genus2_separating")
    X = random_lie_element(rng)
    for piece in splitting.pieces:
        local = pullback(genus2_rep, piece.signature, piece.inclusion)
        restricted = restrict(genus2_rep, coboundary(genus2_rep, X), piece.signature, piece.inclusion)
        assert (restricted - coboundary(local, X)).norm() < 1e-10


@pytest.mark.parametrize(
    ("name", "ambient", "pieces", "flows"),
    [
        ("genus2_separating", 14, (6, 6), 2),
        ("genus2_nonseparating", 14, (12,), 2),
        ("s2_2233_full", 3, (2,), 1),
    ],
)
def test_mayer_vietoris_ranks(name: str, ambient: int, pieces: tuple, flows: int) -> None:
    rep_name, splitting = corpus_splitting(name)
    ranks = mayer_vietoris_ranks(corpus_rep(rep_name), splitting)
    assert ranks.ambient == ambient
    assert ranks.pieces == pieces
    assert ranks.flow_directions == flows
    assert ranks.balanced


def test_cocycle_file_round_trip(tmp_path: Path, s2_2233_rep: GroupRep, rng: np.random.Generator) -> None:
    u = h1_par_complement(s2_2233_rep).random(rng)
    path = save_cocycle(u, tmp_path / "u.json", kind="H1_par_complement")
    loaded = load_cocycle(path)
    assert loaded.signature == u.signature
    assert np.array_equal(loaded.coords(), u.coords())


def test_cocycle_file_rejects_trace(tmp_path: Path) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text(
        "signature: {boundary: 3}\n"
        "generators:\n"
        "  z1: [1, 0, 0, 0, 0, 0, 0, 0, 0]\n"
        "  z2: [0, 0, 0, 0, 0, 0, 0, 0, 0]\n"
        "  z3: [0, 0, 0, 0, 0, 0, 0, 0, 0]\n",
        encoding="utf-8",
    )
    with pytest.raises(ValueError, match="trace"):
        load_cocycle(path)
