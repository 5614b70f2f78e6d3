from __future__ import annotations

from typing import List, Tuple

from orbisymp.cocycle.models import Cocycle
from orbisymp.cocycle.spaces import project_cochain, z1_par_basis
from orbisymp.rep.deform import deform
from orbisymp.rep.evaluate import evaluate
from orbisymp.rep.invariants import invariant_value
from orbisymp.rep.models import GroupRep
from orbisymp.symplectic.pairing import omega_closed_form
from orbisymp.utils.logging import get_logger

from .models import FlowSpec, GraphOfGroups
from .twist import twist_flow

LOGGER = get_logger(__name__)


def moment_map(rep: GroupRep, graph: GraphOfGroups) -> List[Tuple[str, float]]:
    """Lengths of every curve, then bulges of the simple closed ones, keyed ``L<i>``/``M<i>``."""

    values = [(f"L{edge.curve}", invariant_value(evaluate(rep, edge.plus), "L")) for edge in graph.edges]
    values += [
        (f"M{edge.curve}", invariant_value(evaluate(rep, edge.plus), "M")) for edge in graph.edges if edge.is_scc
    ]
    return values


def flow_tangent(rep: GroupRep, graph: GraphOfGroups, curve: int, flavor: str, h: float) -> Cocycle:
    forward = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=h))
    backward = twist_flow(rep, graph, FlowSpec(curve=curve, flavor=flavor, t=-h))
    values = {
        g: (forward.matrix(g) - backward.matrix(g)) / (2.0 * h) @ rep.matrix(g, -1) for g in rep.generators()
    }
    return project_cochain(z1_par_basis(rep), Cocycle(rep.signature, values))


def hamiltonian_residual(rep: GroupRep, graph: GraphOfGroups, spec: FlowSpec, v: Cocycle, h: float = 1e-5) -> float:
    """|omega(X_f, v) + D_v f| for f the L or M function of ``spec.curve``, both sides by central differences.

    ``spec.t`` is ignored.
    """

    curve, flavor = spec.curve, spec.flavor
    edge = graph.edge(curve)
    u_flow = flow_tangent(rep, graph, curve, flavor, h)
    pairing = omega_closed_form(rep, u_flow, v)
    ahead = invariant_value(evaluate(deform(rep, v, h), edge.plus), flavor)
    behind = invariant_value(evaluate(deform(rep, v, -h), edge.plus), flavor)
    derivative = (ahead - behind) / (2.0 * h)
    residual = abs(pairing + derivative)
    LOGGER.debug(
        "Hamiltonian residual",
        extra={"curve": curve, "flavor": flavor, "pairing": pairing, "derivative": derivative, "residual": residual},
    )
    return residual
