# orl/domain/homogeneous.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Any, Tuple

from orl.domain.ordered_graph import OrderedGraph, VertexSet


class HomogeneousKind(Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


class GraphSide(Enum):
    GRAPH = "graph"
    COMPLEMENT = "complement"

    def apply(self, graph: OrderedGraph) -> OrderedGraph:
        return graph if self is GraphSide.GRAPH else graph.complement()


@dataclass(frozen=True)
class TrimResult:
    """U tel que Δ(side(G)[U]) ≤ ε|U|"""
    vertices: VertexSet
    side: GraphSide

    def to_dict(self) -> Dict[str, Any]:
        return {"vertices": list(self.vertices), "side": self.side.value}


@dataclass(frozen=True)
class HomogeneousResult:
    vertices: VertexSet
    kind: HomogeneousKind
    diagnostics: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "size": self.size, "vertices": list(self.vertices),
                "diagnostics": list(self.diagnostics)}
