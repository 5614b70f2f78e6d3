from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from orbisymp.orbifold.models import OrbifoldSignature, SplittingSpec
from orbisymp.words import Word

EdgeKind = Literal["tree", "loop", "formal"]
Flavor = Literal["L", "M"]


class FlowSpec(BaseModel):
    """A twist (L) or bulge (M) flow along one splitting curve."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    curve: int = Field(..., ge=0, description="0-based curve index in the splitting.")
    flavor: Flavor = Field("L", description="L: length twist; M: bulge (simple closed curves only).")
    t: float = Field(0.0, description="Flow time.")


@dataclass(frozen=True)
class GraphEdge:
    """
    A splitting curve seen as an edge of the graph of groups.

    tree: e+ = e- with e+ attached at the child vertex; loop: e_perp e+ e_perp^-1 = e-;
    formal: a full 1-suborbifold, e+ = (a b)^-1 for its two order-two factors.
    """

    curve: int
    kind: EdgeKind
    plus_vertex: int
    minus_vertex: int
    plus: Word
    minus: Optional[Word] = None
    perp: Optional[Word] = None

    @property
    def is_scc(self) -> bool:
        return self.kind != "formal"


@dataclass(frozen=True)
class GraphOfGroups:
    signature: OrbifoldSignature
    splitting: SplittingSpec
    edges: Tuple[GraphEdge, ...]
    parent: Dict[int, Optional[int]]
    subtrees: Dict[int, FrozenSet[int]]

    @property
    def vertex_count(self) -> int:
        return len(self.splitting.pieces)

    @property
    def tree_edges(self) -> Tuple[GraphEdge, ...]:
        return tuple(edge for edge in self.edges if edge.kind == "tree")

    def edge(self, curve: int) -> GraphEdge:
        if not 0 <= curve < len(self.edges):
            raise IndexError(f"curve {curve} out of range 0..{len(self.edges) - 1}")
        return self.edges[curve]

    def at_or_below(self, vertex: int, root: int) -> bool:
        """Partial order of the rooted tree: ``vertex`` lies in the subtree hanging at ``root``."""

        return vertex in self.subtrees[root]
