from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, List, Optional, Set

import numpy as np

from orbisymp.errors import InvalidSplitting
from orbisymp.orbifold.models import CurveRecord, OrbifoldSignature, SplittingSpec
from orbisymp.rep.evaluate import evaluate
from orbisymp.rep.models import GroupRep
from orbisymp.utils.logging import get_logger
from orbisymp.words import Word

from .models import GraphEdge, GraphOfGroups

LOGGER = get_logger(__name__)


def _boundary_image(splitting: SplittingSpec, piece: int, generator) -> Word:
    return splitting.pieces[piece].inclusion.image(generator)


def _rooted_tree(splitting: SplittingSpec) -> Dict[int, Optional[int]]:
    adjacency: Dict[int, List[int]] = {index: [] for index in range(len(splitting.pieces))}
    for curve in splitting.curves:
        if curve.kind == "separating":
            left, right = curve.refs[0].piece, curve.refs[1].piece
            adjacency[left].append(right)
            adjacency[right].append(left)
    parent: Dict[int, Optional[int]] = {0: None}
    queue = deque([0])
    while queue:
        vertex = queue.popleft()
        for neighbour in sorted(adjacency[vertex]):
            if neighbour not in parent:
                parent[neighbour] = vertex
                queue.append(neighbour)
    if len(parent) != len(splitting.pieces):
        raise InvalidSplitting("separating curves do not connect every piece")
    return parent


def _subtrees(parent: Dict[int, Optional[int]]) -> Dict[int, FrozenSet[int]]:
    members: Dict[int, Set[int]] = {vertex: {vertex} for vertex in parent}
    for vertex in parent:
        ancestor = parent[vertex]
        while ancestor is not None:
            members[ancestor].add(vertex)
            ancestor = parent[ancestor]
    return {vertex: frozenset(found) for vertex, found in members.items()}


def _edge(index: int, curve: CurveRecord, splitting: SplittingSpec, parent: Dict[int, Optional[int]]) -> GraphEdge:
    if curve.kind == "separating":
        first, second = curve.refs
        child, other = (first, second) if parent.get(first.piece) == second.piece else (second, first)
        if parent.get(child.piece) != other.piece:
            raise InvalidSplitting(f"separating curve {index} is not a tree edge")
        return GraphEdge(
            curve=index,
            kind="tree",
            plus_vertex=child.piece,
            minus_vertex=other.piece,
            plus=_boundary_image(splitting, child.piece, child.generator),
            minus=_boundary_image(splitting, other.piece, other.generator).inverse(),
        )
    if curve.kind == "nonseparating":
        plus_ref, minus_ref = curve.refs
        if curve.stable is None:
            raise InvalidSplitting(f"non-separating curve {index} has no stable letter")
        return GraphEdge(
            curve=index,
            kind="loop",
            plus_vertex=plus_ref.piece,
            minus_vertex=minus_ref.piece,
            plus=_boundary_image(splitting, plus_ref.piece, plus_ref.generator),
            minus=_boundary_image(splitting, minus_ref.piece, minus_ref.generator).inverse(),
            perp=curve.stable,
        )
    (ref,) = curve.refs
    return GraphEdge(
        curve=index,
        kind="formal",
        plus_vertex=ref.piece,
        minus_vertex=ref.piece,
        plus=_boundary_image(splitting, ref.piece, ref.generator).inverse(),
    )


def build_graph(sig: OrbifoldSignature, splitting: SplittingSpec) -> GraphOfGroups:
    """Graph of groups of a splitting: tree of separating curves rooted at piece 0."""

    if splitting.signature != sig:
        raise InvalidSplitting(f"splitting is for {splitting.signature.label()}, not {sig.label()}")
    parent = _rooted_tree(splitting)
    edges = tuple(_edge(index, curve, splitting, parent) for index, curve in enumerate(splitting.curves))
    graph = GraphOfGroups(
        signature=sig, splitting=splitting, edges=edges, parent=parent, subtrees=_subtrees(parent)
    )
    LOGGER.debug(
        "Built graph of groups",
        extra={"vertices": graph.vertex_count, "edges": [edge.kind for edge in edges]},
    )
    return graph


def edge_relation_residuals(rep: GroupRep, graph: GraphOfGroups) -> List[float]:
    """||rho(e+) - rho(e-)|| on tree edges and ||rho(e_perp e+ e_perp^-1) - rho(e-)|| on loops."""

    residuals: List[float] = []
    for edge in graph.edges:
        if edge.kind == "tree":
            residuals.append(float(np.linalg.norm(evaluate(rep, edge.plus) - evaluate(rep, edge.minus))))
        elif edge.kind == "loop":
            twisted = edge.perp * edge.plus * edge.perp.inverse()
            residuals.append(float(np.linalg.norm(evaluate(rep, twisted) - evaluate(rep, edge.minus))))
    return residuals
