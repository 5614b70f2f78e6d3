from .graph import build_graph, edge_relation_residuals
from .hamiltonian import flow_tangent, hamiltonian_residual, moment_map
from .models import FlowSpec, GraphEdge, GraphOfGroups
from .twist import letter_value, twist_flow

__all__ = [
    "FlowSpec",
    "GraphEdge",
    "GraphOfGroups",
    "build_graph",
    "edge_relation_residuals",
    "flow_tangent",
    "hamiltonian_residual",
    "letter_value",
    "moment_map",
    "twist_flow",
]
