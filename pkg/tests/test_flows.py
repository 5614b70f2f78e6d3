from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import expm

from orbisymp.cocycle import h1_par_complement
from orbisymp.errors import FlavorNotAvailable, InvalidSplitting
from orbisymp.flows import (
    FlowSpec,
    GraphOfGroups,
    build_graph,
    edge_relation_residuals,
    hamiltonian_residual,
    moment_map,
    twist_flow,
)
from orbisymp.orbifold import OrbifoldSignature
from orbisymp.rep import GroupRep, evaluate, goldman_derivative, invariant_value, relation_residual
from orbisymp.verify.corpus import corpus_rep, corpus_splitting
from orbisymp.words import Generator, Word


def _setup(name: str) -> tuple[GroupRep, GraphOfGroups]:
    rep_name, splitting = corpus_splitting(name)
    rep = corpus_rep(rep_name)
    return rep, build_graph(rep.signature, splitting)


def test_separating_curve_is_a_tree_edge() -> None:
    _, graph = _setup("genus2_separating")
    (edge,) = graph.edges
    assert edge.kind == "tree"
    assert graph.parent == {0: None, 1: 0}
    assert (edge.plus_vertex, edge.minus_vertex) == (1, 0)
    assert edge.plus == Word.parse("y2 x2 y2^-1 x2^-1")
    assert edge.minus == Word.parse("x1 y1 x1^-1 y1^-1")
    assert graph.at_or_below(1, 1) and not graph.at_or_below(0, 1)


def test_nonseparating_curve_is_a_loop() -> None:
    _, graph = _setup("genus2_nonseparating")
    (edge,) = graph.edges
    assert edge.kind == "loop"
    assert edge.plus == Word.parse("x2 y2 x2^-1")
    assert edge.minus == Word.parse("y2")
    assert edge.perp == Word.parse("x2^-1")


def test_full_suborbifold_is_a_formal_edge() -> None:
    _, graph = _setup("s2_2233_full")
    (edge,) = graph.edges
    assert edge.kind == "formal" and not edge.is_scc
    assert edge.plus == Word.parse("s2^-1 s1^-1")


def test_pants_graph_of_genus2() -> None:
    rep, graph = _setup("genus2_pants")
    assert graph.vertex_count == 2
    assert [edge.kind for edge in graph.edges] == ["loop", "loop", "tree"]
    assert max(edge_relation_residuals(rep, graph)) < 1e-10
    names = [name for name, _ in moment_map(rep, graph)]
    assert names == ["L0", "L1", "L2", "M0", "M1", "M2"]


def test_graph_rejects_foreign_splitting() -> None:
    _, splitting = corpus_splitting("genus2_separating")
    with pytest.raises(InvalidSplitting):
        build_graph(OrbifoldSignature(genus=3), splitting)


def test_edge_lookup_is_bounded() -> None:
    _, graph = _setup("genus2_separating")
    with pytest.raises(IndexError):
        graph.edge(1)


def test_zero_time_returns_input() -> None:
    rep, graph = _setup("genus2_pants")
    assert twist_flow(rep, graph, FlowSpec(curve=2, flavor="M", t=0.0)) is rep


def test_bulge_is_not_defined_on_full_suborbifolds() -> None:
    rep, graph = _setup("s2_2233_full")
    with pytest.raises(FlavorNotAvailable):
        twist_flow(rep, graph, FlowSpec(curve=0, flavor="M", t=0.5))


def test_flow_spec_validation() -> None:
    with pytest.raises(ValueError):
        FlowSpec(curve=-1)
    with pytest.raises(ValueError):
        FlowSpec(curve=0, flavor="N")


def test_tree_flow_moves_only_the_subtree() -> None:
    rep, graph = _setup("genus2_separating")
    flowed = twist_flow(rep, graph, FlowSpec(curve=0, flavor="L", t=0.7))
    for name in ("x1", "y1"):
        generator = Generator.parse(name)
        assert np.array_equal(flowed.matrix(generator), rep.matrix(generator))
    assert flowed.max_difference(rep) > 1e-3
    assert relation_residual(flowed) < 1e-9


def test_loop_flow_moves_only_the_stable_letter() -> None:
    rep, graph = _setup("genus2_nonseparating")
    flowed = twist_flow(rep, graph, FlowSpec(curve=0, flavor="M", t=0.4))
    moved = [g for g in rep.generators() if not np.array_equal(flowed.matrix(g), rep.matrix(g))]
    assert moved == [Generator("x", 2)]
    assert relation_residual(flowed) < 1e-9


def test_full_suborbifold_flow_keeps_its_length() -> None:
    rep, graph = _setup("s2_2233_full")
    (edge,) = graph.edges
    flowed = twist_flow(rep, graph, FlowSpec(curve=0, flavor="L", t=1.3))
    assert flowed.max_difference(rep) > 1e-3
    assert relation_residual(flowed) < 1e-9
    assert invariant_value(evaluate(flowed, edge.plus), "L") == pytest.approx(
        invariant_value(evaluate(rep, edge.plus), "L"), abs=1e-10
    )


@pytest.mark.parametrize("name", ["genus2_separating", "genus2_nonseparating", "genus2_pants", "s2_2233_full"])
def test_moment_map_is_conserved(name: str) -> None:
    rep, graph = _setup(name)
    before = dict(moment_map(rep, graph))
    for edge in graph.edges:
        for flavor in ("L", "M") if edge.is_scc else ("L",):
            after = dict(moment_map(twist_flow(rep, graph, FlowSpec(curve=edge.curve, flavor=flavor, t=-1.1)), graph))
            for key, value in before.items():
                assert after[key] == pytest.approx(value, abs=1e-10)


@pytest.mark.parametrize("flavor", ["L", "M"])
def test_flow_is_a_one_parameter_group(flavor: str) -> None:
    rep, graph = _setup("genus2_pants")
    for curve in range(3):
        once = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=0.9))
        halfway = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=0.4))
        twice = twist_flow(halfway, graph, FlowSpec(curve=curve, flavor=flavor, t=0.5))
        assert once.max_difference(twice) < 1e-9


def test_flows_of_a_pants_decomposition_commute() -> None:
    rep, graph = _setup("genus2_pants")
    a = FlowSpec(curve=0, flavor="L", t=0.6)
    b = FlowSpec(curve=2, flavor="M", t=-0.8)
    ab = twist_flow(twist_flow(rep, graph, b), graph, a)
    ba = twist_flow(twist_flow(rep, graph, a), graph, b)
    assert ab.max_difference(ba) < 1e-9


@pytest.mark.parametrize(("name", "curve", "flavor"), [("genus2_separating", 0, "L"), ("s2_2233_full", 0, "L")])
def test_flow_is_hamiltonian(name: str, curve: int, flavor: str, rng: np.random.Generator) -> None:
    rep, graph = _setup(name)
    v = h1_par_complement(rep).random(rng)
    v = v.scale(1.0 / v.norm())
    assert hamiltonian_residual(rep, graph, FlowSpec(curve=curve, flavor=flavor), v, h=1e-4) < 1e-5


@pytest.mark.parametrize("name", ["genus2_separating", "genus2_nonseparating", "genus2_pants"])
@pytest.mark.parametrize("t", [-2.0, 2.0])
def test_flows_keep_relations_at_input_scale(name: str, t: float) -> None:
    rep, graph = _setup(name)
    baseline = max(relation_residual(rep), 1e-12)
    for edge in graph.edges:
        for flavor in ("L", "M"):
            flowed = twist_flow(rep, graph, FlowSpec(curve=edge.curve, flavor=flavor, t=t))
            assert relation_residual(flowed) <= 10.0 * baseline
            assert max(edge_relation_residuals(flowed, graph)) < 1e-9


def test_loop_flow_moves_x2_by_the_flow_matrix() -> None:
    rep, graph = _setup("genus2_nonseparating")
    (edge,) = graph.edges
    H = goldman_derivative(evaluate(rep, edge.plus), "L")
    flowed = twist_flow(rep, graph, FlowSpec(curve=0, flavor="L", t=0.8))
    x2 = Generator("x", 2)
    assert np.allclose(flowed.matrix(x2), expm(-0.8 * H) @ rep.matrix(x2), atol=1e-12)
