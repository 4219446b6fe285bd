# orl/domain/patterns.py
"""
Motifs ordonnés (chemins monotones, arbres S et P) et plongements induits.
"""
from dataclasses import dataclass
from typing import Iterable, Tuple, Dict, Any

from orl.domain.errors import PreconditionError
from orl.domain.ordered_graph import OrderedGraph

MAX_PATTERN_VERTICES = 12


@dataclass(frozen=True)
class OrderedPattern:
    """Petit graphe ordonné à éviter (p ≤ 12)"""
    name: str
    graph: OrderedGraph

    def __post_init__(self):
        if self.graph.n > MAX_PATTERN_VERTICES:
            raise PreconditionError(
                f"pattern '{self.name}' has {self.graph.n} vertices (max {MAX_PATTERN_VERTICES})"
            )

    @classmethod
    def from_edges(cls, name: str, p: int, edges: Iterable[Tuple[int, int]]) -> "OrderedPattern":
        if p > MAX_PATTERN_VERTICES:
            raise PreconditionError(f"pattern '{name}' has {p} vertices (max {MAX_PATTERN_VERTICES})")
        return cls(name, OrderedGraph.from_edges(p, edges))

    @property
    def p(self) -> int:
        return self.graph.n

    @property
    def rows(self) -> Tuple[int, ...]:
        return self.graph.rows


def monotone_path(k: int) -> OrderedPattern:
    if k < 1:
        raise PreconditionError(f"monotone path size must be >= 1, got {k}")
    return OrderedPattern.from_edges(f"mp:{k}", k, [(i, i + 1) for i in range(k - 1)])


# S : étoile de centre 0 ; P : arêtes 03, 02, 12
STAR_S = OrderedPattern.from_edges("S", 4, [(0, 1), (0, 2), (0, 3)])
PATTERN_P = OrderedPattern.from_edges("P", 4, [(0, 3), (0, 2), (1, 2)])


def parse_pattern_name(name: str) -> OrderedPattern:
    """`mp:k`, `S` ou `P`"""
    text = name.strip()
    if text == "S":
        return STAR_S
    if text == "P":
        return PATTERN_P
    if text.startswith("mp:"):
        try:
            k = int(text[3:])
        except ValueError:
            raise PreconditionError(f"invalid monotone path size in '{name}'")
        return monotone_path(k)
    raise PreconditionError(f"unknown pattern '{name}' (expected mp:k, S or P)")


@dataclass(frozen=True)
class Embedding:
    """Injection strictement croissante sommets du motif -> sommets de l'hôte"""
    mapping: Tuple[int, ...]

    def verifies(self, graph: OrderedGraph, pattern: OrderedPattern) -> bool:
        """Vérification littérale : ordre, arêtes et non-arêtes"""
        image = self.mapping
        if len(image) != pattern.p:
            return False
        if any(not 0 <= v < graph.n for v in image):
            return False
        if any(image[i] >= image[i + 1] for i in range(len(image) - 1)):
            return False
        for i in range(pattern.p):
            for j in range(i + 1, pattern.p):
                if pattern.graph.adjacent(i, j) != graph.adjacent(image[i], image[j]):
                    return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {"mapping": list(self.mapping)}
