from __future__ import annotations

import numpy as np
import pytest

from orbisymp.cocycle import coboundary, h1_par_complement, z1_basis, z1_par_basis
from orbisymp.errors import InvalidSignature
from orbisymp.rep import GroupRep, random_lie_element
from orbisymp.symplectic import (
    boundary_term_identity_check,
    closedness_probe,
    decomposition_residual,
    gram_report,
    omega_closed_form,
    omega_cycle,
    pairing_report,
    piece_pairings,
    tau_form,
    tau_on_image,
)
from orbisymp.verify.corpus import corpus_rep, corpus_splitting
from orbisymp.words import Generator


@pytest.mark.parametrize("name", ["genus2", "s2_2233", "s2_237", "pants"])
def test_closed_form_matches_cycle_evaluation(name: str, rng: np.random.Generator) -> None:
    rep = corpus_rep(name)
    space = z1_par_basis(rep)
    for _ in range(5):
        u, v = space.random(rng), space.random(rng)
        assert omega_closed_form(rep, u, v) == pytest.approx(omega_cycle(rep, u, v), abs=1e-10)


def test_pairing_is_antisymmetric(s2_2233_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_basis(s2_2233_rep)
    u, v = space.random(rng), space.random(rng)
    assert omega_closed_form(s2_2233_rep, u, v) == pytest.approx(-omega_closed_form(s2_2233_rep, v, u), abs=1e-9)
    assert abs(omega_closed_form(s2_2233_rep, u, u)) < 1e-9


def test_coboundaries_are_null(genus2_rep: GroupRep, rng: np.random.Generator) -> None:
    v = z1_basis(genus2_rep).random(rng)
    dX = coboundary(genus2_rep, random_lie_element(rng))
    assert abs(omega_closed_form(genus2_rep, dX, v)) < 1e-9
    assert abs(omega_closed_form(genus2_rep, v, dX)) < 1e-9


def test_coboundaries_are_null_on_pants(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_par_basis(pants_rep)
    for _ in range(5):
        v = space.random(rng)
        dX = coboundary(pants_rep, random_lie_element(rng))
        assert abs(omega_closed_form(pants_rep, dX, v)) < 1e-9


def test_pairing_off_the_fuchsian_locus(genus2_deformed_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_basis(genus2_deformed_rep)
    u, v = space.random(rng), space.random(rng)
    assert omega_closed_form(genus2_deformed_rep, u, v) == pytest.approx(
        omega_cycle(genus2_deformed_rep, u, v), abs=1e-10
    )
    dX = coboundary(genus2_deformed_rep, random_lie_element(rng))
    assert abs(omega_closed_form(genus2_deformed_rep, dX, v)) < 1e-9


def test_pairing_report_lists_corrections(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_par_basis(pants_rep)
    report = pairing_report(pants_rep, space.random(rng), space.random(rng))
    assert sorted(report.corrections) == ["X1", "X2", "X3"]
    assert report.discrepancy < 1e-10
    assert all(len(values) == 9 for values in report.corrections.values())


def test_cone_corrections_are_reported(s2_2233_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_basis(s2_2233_rep)
    report = pairing_report(s2_2233_rep, space.random(rng), space.random(rng))
    assert sorted(report.corrections) == ["T1", "T2", "T3", "T4"]


def test_tau_agrees_on_preimages_and_images(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    p = pants_rep.matrix(Generator("z", 2))
    p_inv = np.linalg.inv(p)
    X, Y = random_lie_element(rng), random_lie_element(rng)
    A, B = p @ X @ p_inv - X, p @ Y @ p_inv - Y
    assert tau_on_image(p, A, B) == pytest.approx(tau_form(p, X, Y), abs=1e-10)
    assert tau_on_image(p, A, B) == pytest.approx(-tau_on_image(p, B, A), abs=1e-10)


def test_boundary_terms_match_tau(pants_rep: GroupRep, rng: np.random.Generator) -> None:
    space = z1_par_basis(pants_rep)
    assert boundary_term_identity_check(pants_rep, space.random(rng), space.random(rng)) < 1e-10


def test_gram_of_rigid_triangle_group_is_empty(s2_237_rep: GroupRep) -> None:
    report = gram_report(s2_237_rep, h1_par_complement(s2_237_rep))
    assert report.dimension == 0
    assert report.rank == 0
    assert report.relative_min_singular == 0.0


@pytest.mark.parametrize(("name", "dimension"), [("s2_2233", 4), ("pants", 2)])
def test_gram_is_nondegenerate(name: str, dimension: int) -> None:
    rep = corpus_rep(name)
    report = gram_report(rep, h1_par_complement(rep), threads=2)
    assert report.dimension == dimension
    assert report.rank == dimension
    assert report.antisymmetry < 1e-9
    assert report.max_singular / report.min_singular < 1e6


@pytest.mark.parametrize("name", ["genus2_separating", "genus2_nonseparating", "s2_2233_full"])
def test_pairing_splits_over_pieces(name: str, rng: np.random.Generator) -> None:
    rep_name, splitting = corpus_splitting(name)
    rep = corpus_rep(rep_name)
    space = z1_par_basis(rep, splitting.parabolic_words())
    for _ in range(3):
        u, v = space.random(rng), space.random(rng)
        assert decomposition_residual(rep, splitting, u, v) < 1e-8
    assert len(piece_pairings(rep, splitting, u, v)) == len(splitting.pieces)


def test_closedness_probe_on_cone_sphere(s2_2233_rep: GroupRep) -> None:
    directions = h1_par_complement(s2_2233_rep).basis[:3]
    assert closedness_probe(s2_2233_rep, directions, 1e-3) < 1e-3


def test_closedness_probe_rejects_bad_input(pants_rep: GroupRep, s2_2233_rep: GroupRep) -> None:
    with pytest.raises(InvalidSignature):
        closedness_probe(pants_rep, h1_par_complement(pants_rep).basis, 1e-3)
    with pytest.raises(ValueError):
        closedness_probe(s2_2233_rep, h1_par_complement(s2_2233_rep).basis[:2], 1e-3)
