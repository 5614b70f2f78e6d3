from __future__ import annotations

from functools import partial
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np
from scipy.linalg import expm

from orbisymp.cocycle.spaces import h1_par_complement
from orbisymp.flows.graph import build_graph, edge_relation_residuals
from orbisymp.flows.hamiltonian import hamiltonian_residual, moment_map
from orbisymp.flows.models import FlowSpec, GraphOfGroups
from orbisymp.flows.twist import twist_flow
from orbisymp.rep.algebra import random_lie_element, trace_pairing
from orbisymp.rep.evaluate import evaluate, relation_residual
from orbisymp.rep.invariants import goldman_derivative, invariant_value
from orbisymp.rep.models import GroupRep
from orbisymp.verify.corpus import corpus_rep, corpus_splitting
from orbisymp.verify.models import Check, CheckContext
from orbisymp.words import Word

FLOW_SPLITTINGS = ("genus2_separating", "genus2_nonseparating", "genus2_pants", "s2_2233_full")
HAMILTONIAN_STEP = 1e-4
RELATION_FLOOR = 1e-12
MAX_TIME = 2.0


def _setup(name: str) -> Tuple[GroupRep, GraphOfGroups]:
    rep_name, splitting = corpus_splitting(name)
    rep = corpus_rep(rep_name)
    return rep, build_graph(rep.signature, splitting)


def _flows(graph: GraphOfGroups) -> List[Tuple[int, str]]:
    return [(edge.curve, flavor) for edge in graph.edges for flavor in (("L", "M") if edge.is_scc else ("L",))]


def _moment(rep: GroupRep, graph: GraphOfGroups) -> np.ndarray:
    return np.array([value for _, value in moment_map(rep, graph)])


def check_hamiltonian(name: str, ctx: CheckContext) -> float:
    rep, graph = _setup(name)
    space = h1_par_complement(rep)
    rng = ctx.rng()
    worst = 0.0
    for curve, flavor in _flows(graph):
        for _ in range(ctx.count(3)):
            v = space.random(rng)
            v = v.scale(1.0 / v.norm())
            spec = FlowSpec(curve=curve, flavor=flavor)
            worst = max(worst, hamiltonian_residual(rep, graph, spec, v, HAMILTONIAN_STEP))
    return worst


def check_moment_conservation(name: str, ctx: CheckContext) -> float:
    rep, graph = _setup(name)
    before = _moment(rep, graph)
    rng = ctx.rng()
    worst = 0.0
    for curve, flavor in _flows(graph):
        for _ in range(ctx.count(5)):
            t = float(rng.uniform(-MAX_TIME, MAX_TIME))
            after = _moment(twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=t)), graph)
            worst = max(worst, float(np.max(np.abs(after - before))))
    return worst


def check_relations(name: str, ctx: CheckContext) -> float:
    """Relation residual of flowed representations relative to the input residual."""

    rep, graph = _setup(name)
    baseline = max(relation_residual(rep), RELATION_FLOOR)
    flows = _flows(graph)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(100)):
        curve, flavor = flows[int(rng.integers(len(flows)))]
        t = float(rng.uniform(-MAX_TIME, MAX_TIME))
        flowed = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=t))
        worst = max(worst, relation_residual(flowed) / baseline)
    return worst


def check_edge_relations(name: str, ctx: CheckContext) -> float:
    rep, graph = _setup(name)
    rng = ctx.rng()
    worst = max(edge_relation_residuals(rep, graph), default=0.0)
    for curve, flavor in _flows(graph):
        t = float(rng.uniform(-MAX_TIME, MAX_TIME))
        flowed = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=t))
        worst = max(worst, max(edge_relation_residuals(flowed, graph), default=0.0))
    return worst


def _scale(rep: GroupRep) -> float:
    return max(float(np.max(np.abs(m))) for m in rep.matrices.values())


def check_group_law(name: str, ctx: CheckContext) -> float:
    """Relative gap between the flow for t + s and the composite of the flows for t and s."""

    rep, graph = _setup(name)
    rng = ctx.rng()
    worst = 0.0
    for curve, flavor in _flows(graph):
        t, s = (float(x) for x in rng.uniform(-1.0, 1.0, size=2))
        once = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=t + s))
        twice = twist_flow(
            twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=t)),
            graph,
            FlowSpec(curve=curve, flavor=flavor, t=s),
        )
        worst = max(worst, once.max_difference(twice) / _scale(once))
    return worst


def check_commutativity(name: str, ctx: CheckContext) -> float:
    rep, graph = _setup(name)
    rng = ctx.rng()
    worst = 0.0
    for (first, f_flavor), (second, s_flavor) in combinations(_flows(graph), 2):
        a = FlowSpec(curve=first, flavor=f_flavor, t=float(rng.uniform(-1.0, 1.0)))
        b = FlowSpec(curve=second, flavor=s_flavor, t=float(rng.uniform(-1.0, 1.0)))
        ab = twist_flow(twist_flow(rep, graph, b), graph, a)
        ba = twist_flow(twist_flow(rep, graph, a), graph, b)
        worst = max(worst, ab.max_difference(ba) / _scale(ab))
    return worst


def check_goldman_derivatives(ctx: CheckContext) -> float:
    """Finite-difference derivative of L and M along m exp(hX) against Tr(f#(m) X), relative."""

    holonomies: Dict[str, np.ndarray] = {}
    for rep_name, word_text in (("genus2", "x1"), ("genus2_deformed", "y2"), ("pants", "z1"), ("pants", "z3")):
        holonomies[f"{rep_name}:{word_text}"] = evaluate(corpus_rep(rep_name), Word.parse(word_text))
    keys = sorted(holonomies)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(100)):
        m = holonomies[keys[int(rng.integers(len(keys)))]]
        X = random_lie_element(rng)
        h = float(10.0 ** rng.uniform(-5.0, -4.0))
        for which in ("L", "M"):
            gradient = goldman_derivative(m, which)
            exact = trace_pairing(gradient, X)
            fd = (invariant_value(m @ expm(h * X), which) - invariant_value(m @ expm(-h * X), which)) / (2.0 * h)
            scale = max(abs(exact), float(np.linalg.norm(gradient) * np.linalg.norm(X)))
            worst = max(worst, abs(fd - exact) / scale)
    return worst


CHECKS = []
for _name in FLOW_SPLITTINGS:
    CHECKS += [
        Check(f"flows.hamiltonian.{_name}", "flows", 1e-5, partial(check_hamiltonian, _name)),
        Check(f"flows.moment_conservation.{_name}", "flows", 1e-10, partial(check_moment_conservation, _name)),
        Check(f"flows.relations.{_name}", "flows", 10.0, partial(check_relations, _name)),
        Check(f"flows.edge_relations.{_name}", "flows", 1e-9, partial(check_edge_relations, _name)),
        Check(f"flows.group_law.{_name}", "flows", 1e-10, partial(check_group_law, _name)),
    ]
CHECKS.append(Check("flows.commutativity.genus2_pants", "flows", 1e-10, partial(check_commutativity, "genus2_pants")))
CHECKS.append(Check("flows.goldman_derivatives", "flows", 1e-6, check_goldman_derivatives))
