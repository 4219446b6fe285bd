# orl/domain/ordered_graph.py
"""
Modèle de graphe ordonné partagé par tous les modules.

L'ordre ≺ est toujours l'ordre des indices 0..n-1. L'adjacence est une
matrice de bits dense : une ligne par sommet, stockée comme entier Python.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Tuple, Union, Any

from orl.domain.errors import PreconditionError

MAX_VERTICES = 1 << 16

VertexSet = Tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    """Itère les positions des bits à 1, par ordre croissant"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> List[int]:
    return list(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Ensemble de sommets dédupliqué, trié selon ≺"""
    return tuple(sorted(set(vertices)))


class NeighborhoodMode(Enum):
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class OrderedGraph:
    """Graphe ordonné immuable sur {0..n-1}"""
    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise PreconditionError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.rows) != self.n:
            raise PreconditionError(f"expected {self.n} adjacency rows, got {len(self.rows)}")

    # Construction

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "OrderedGraph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_rows(cls, rows: Iterable[int], check: bool = True) -> "OrderedGraph":
        rows = tuple(rows)
        graph = cls(len(rows), rows)
        if check:
            full = graph.full_mask
            for v, row in enumerate(rows):
                if row & ~full:
                    raise PreconditionError(f"row {v} references vertices beyond n={graph.n}")
                if row >> v & 1:
                    raise PreconditionError(f"loop at vertex {v}")
                for w in iter_bits(row):
                    if not rows[w] >> v & 1:
                        raise PreconditionError(f"asymmetric adjacency between {v} and {w}")
        return graph

    @classmethod
    def empty(cls, n: int) -> "OrderedGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "OrderedGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    # Requêtes élémentaires

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> VertexSet:
        return tuple(iter_bits(self.rows[v]))

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Arêtes (u, v) avec u < v, dans l'ordre lexicographique"""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return self.edge_count / (self.n * (self.n - 1) / 2)

    def check_vertices(self, vertices: Iterable[int]) -> VertexSet:
        result = vertex_set(vertices)
        for v in result:
            if not 0 <= v < self.n:
                raise PreconditionError(f"vertex {v} out of range for n={self.n}")
        return result

    # Opérations du modèle

    def complement(self) -> "OrderedGraph":
        full = self.full_mask
        return OrderedGraph(self.n, tuple((row ^ full) & ~(1 << v) for v, row in enumerate(self.rows)))

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["OrderedGraph", VertexSet]:
        """G[U] réétiqueté 0..|U|-1 en préservant ≺, avec la table de retour"""
        index_map = self.check_vertices(vertices)
        rows = []
        for u in index_map:
            source = self.rows[u]
            row = 0
            for j, w in enumerate(index_map):
                if source >> w & 1:
                    row |= 1 << j
            rows.append(row)
        return OrderedGraph(len(index_map), tuple(rows)), index_map

    def neighborhood_mask(self, mask: int, mode: NeighborhoodMode = NeighborhoodMode.OPEN) -> int:
        result = 0
        for u in iter_bits(mask):
            result |= self.rows[u]
        if mode is NeighborhoodMode.CLOSED:
            return result | mask
        return result & ~mask

    def neighborhood(self, vertices: Iterable[int],
                     mode: Union[NeighborhoodMode, str] = NeighborhoodMode.OPEN) -> VertexSet:
        """N(U) en mode ouvert, N[U] = U ∪ N(U) en mode fermé"""
        mode = NeighborhoodMode(mode)
        mask = mask_of(self.check_vertices(vertices))
        return tuple(iter_bits(self.neighborhood_mask(mask, mode)))

    def forward_mask(self, v: int) -> int:
        return self.rows[v] >> (v + 1) << (v + 1)

    def forward_neighborhood(self, v: int) -> VertexSet:
        """N⁺(v) : voisins strictement après v"""
        self.check_vertices((v,))
        return tuple(iter_bits(self.forward_mask(v)))

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.rows), default=0)

    def restricted_max_degree(self, mask: int) -> int:
        """Δ(G[U]) sans réétiquetage"""
        return max((self.rows[v] & mask).bit_count() for v in iter_bits(mask)) if mask else 0

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}


class ClosureGraph(OrderedGraph):
    """Fermeture transitive ordonnée : xy arête ssi un chemin monotone relie x et y"""


@dataclass(frozen=True)
class BipartiteOrderedGraph:
    """
    Graphe biparti à classes ordonnées A et B disjointes.

    Les sommets portent leurs étiquettes d'origine ; a_rows[i] est le masque
    des positions de B adjacentes au i-ème sommet de A.
    """
    a_vertices: VertexSet
    b_vertices: VertexSet
    a_rows: Tuple[int, ...]
    b_rows: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    a_index: Dict[int, int] = field(init=False, repr=False, compare=False)
    b_index: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.a_rows) != len(self.a_vertices):
            raise PreconditionError("one adjacency row per A-vertex is required")
        if set(self.a_vertices) & set(self.b_vertices):
            raise PreconditionError("classes A and B must be disjoint")
        if list(self.a_vertices) != sorted(set(self.a_vertices)) or \
                list(self.b_vertices) != sorted(set(self.b_vertices)):
            raise PreconditionError("class labels must be strictly increasing")
        limit = (1 << len(self.b_vertices)) - 1
        b_rows = [0] * len(self.b_vertices)
        for i, row in enumerate(self.a_rows):
            if row & ~limit:
                raise PreconditionError(f"row of A-vertex {self.a_vertices[i]} leaves class B")
            for j in iter_bits(row):
                b_rows[j] |= 1 << i
        object.__setattr__(self, "b_rows", tuple(b_rows))
        object.__setattr__(self, "a_index", {v: i for i, v in enumerate(self.a_vertices)})
        object.__setattr__(self, "b_index", {v: j for j, v in enumerate(self.b_vertices)})

    @classmethod
    def from_pairs(cls, a_vertices: Iterable[int], b_vertices: Iterable[int],
                   pairs: Iterable[Tuple[int, int]]) -> "BipartiteOrderedGraph":
        a_vertices, b_vertices = vertex_set(a_vertices), vertex_set(b_vertices)
        b_index = {v: j for j, v in enumerate(b_vertices)}
        a_index = {v: i for i, v in enumerate(a_vertices)}
        rows = [0] * len(a_vertices)
        for a, b in pairs:
            if a not in a_index or b not in b_index:
                raise PreconditionError(f"pair ({a}, {b}) is not an A×B pair")
            rows[a_index[a]] |= 1 << b_index[b]
        return cls(a_vertices, b_vertices, tuple(rows))

    @classmethod
    def from_ordered_graph(cls, graph: OrderedGraph, split: int) -> "BipartiteOrderedGraph":
        """Classes = les `split` premiers sommets contre le reste"""
        if not 0 <= split <= graph.n:
            raise PreconditionError(f"split {split} outside [0, {graph.n}]")
        inside_a = (1 << split) - 1
        rows = []
        for v in range(graph.n):
            row = graph.rows[v]
            if v < split:
                if row & inside_a:
                    raise PreconditionError(f"edge inside class A at vertex {v}")
                rows.append(row >> split)
            elif row >> split:
                raise PreconditionError(f"edge inside class B at vertex {v}")
        return cls(tuple(range(split)), tuple(range(split, graph.n)), tuple(rows))

    @property
    def n_a(self) -> int:
        return len(self.a_vertices)

    @property
    def n_b(self) -> int:
        return len(self.b_vertices)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.a_rows[self.a_index[a]] >> self.b_index[b] & 1)

    def a_neighbors(self, a: int) -> VertexSet:
        return tuple(self.b_vertices[j] for j in iter_bits(self.a_rows[self.a_index[a]]))

    def b_neighbors(self, b: int) -> VertexSet:
        return tuple(self.a_vertices[i] for i in iter_bits(self.b_rows[self.b_index[b]]))

    def neighborhood_of_a(self, vertices: Iterable[int]) -> VertexSet:
        mask = 0
        for a in vertices:
            mask |= self.a_rows[self.a_index[a]]
        return tuple(self.b_vertices[j] for j in iter_bits(mask))

    def neighborhood_of_b(self, vertices: Iterable[int]) -> VertexSet:
        mask = 0
        for b in vertices:
            mask |= self.b_rows[self.b_index[b]]
        return tuple(self.a_vertices[i] for i in iter_bits(mask))

    def to_ordered_graph(self) -> OrderedGraph:
        """Vue en graphe ordonné sur les étiquettes (A et B doivent couvrir 0..N-1)"""
        labels = sorted(self.a_vertices + self.b_vertices)
        if labels != list(range(len(labels))):
            raise PreconditionError("labels must cover 0..N-1 to build an ordered graph")
        pairs = [(a, self.b_vertices[j]) for i, a in enumerate(self.a_vertices)
                 for j in iter_bits(self.a_rows[i])]
        return OrderedGraph.from_edges(len(labels), pairs)
