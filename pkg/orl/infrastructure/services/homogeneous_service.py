# orl/infrastructure/services/homogeneous_service.py
"""
Extraction d'un ensemble homogène (clique ou stable) vérifié.

Chaîne : côté de faible degré (graphe ou complémentaire), décomposition
quasi-EH sur ce côté, puis récursion dans chaque ensemble de la famille et
union des résultats de même nature.
"""
import itertools
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from orl.domain.embedding import as_fraction
from orl.domain.errors import (
    EmbeddingError, InvariantBreachError, PreconditionError,
)
from orl.domain.homogeneous import GraphSide, HomogeneousKind, HomogeneousResult, TrimResult
from orl.domain.ordered_graph import OrderedGraph, VertexSet, iter_bits, mask_of, members
from orl.domain.qeh import FamilyResult, PathResult, QehConstants
from orl.infrastructure.random_streams import RandomStreams
from orl.infrastructure.services.qeh_service import QehService

EXHAUSTIVE_LEAF = 12

Rational = Union[Fraction, int, float, str]


def _internal_degrees(rows: Sequence[int], mask: int) -> List[Tuple[int, int]]:
    return [(v, (rows[v] & mask).bit_count()) for v in iter_bits(mask)]


def _within_bound(rows: Sequence[int], mask: int, eps: Fraction) -> bool:
    size = mask.bit_count()
    return all((rows[v] & mask).bit_count() <= eps * size for v in iter_bits(mask))


def _max_clique_mask(rows: Sequence[int], candidates: int) -> int:
    """Bron–Kerbosch avec pivot, restreint à `candidates`"""
    best = 0

    def expand(r: int, p: int, x: int) -> None:
        nonlocal best
        if not p:
            if r.bit_count() > best.bit_count():
                best = r
            return
        if r.bit_count() + p.bit_count() <= best.bit_count():
            return
        pivot = max(iter_bits(p | x), key=lambda u: (p & rows[u]).bit_count())
        for v in iter_bits(p & ~rows[pivot]):
            bit = 1 << v
            expand(r | bit, p & rows[v], x & rows[v])
            p &= ~bit
            x |= bit

    expand(0, candidates, 0)
    return best


def _greedy_clique_mask(rows: Sequence[int], candidates: int) -> int:
    chosen = 0
    while candidates:
        v = max(iter_bits(candidates), key=lambda u: ((rows[u] & candidates).bit_count(), -u))
        chosen |= 1 << v
        candidates &= rows[v]
    return chosen


class HomogeneousService:

    def __init__(self, qeh_service: QehService, check_invariants: bool = True, base_size: int = 16):
        self.logger = logging.getLogger(__name__)
        self.qeh_service = qeh_service
        self.check_invariants = check_invariants
        self.base_size = base_size

    @staticmethod
    def is_homogeneous(graph: OrderedGraph, vertices: Sequence[int], kind: HomogeneousKind) -> bool:
        want = kind is HomogeneousKind.CLIQUE
        for i, u in enumerate(vertices):
            for w in vertices[i + 1:]:
                if u == w or graph.adjacent(u, w) != want:
                    return False
        return True

    def _breach(self, message: str) -> None:
        self.logger.error(message)
        raise InvariantBreachError(message)

    # Élagage

    def trim_high_degree(self, graph: OrderedGraph, vertices: Sequence[int], eps0: Rational) -> VertexSet:
        """U = U₀ ∖ W, W = sommets de degré > 2ε₀|U₀| dans G[U₀]"""
        eps0 = as_fraction(eps0)
        u0 = graph.check_vertices(vertices)
        mask = mask_of(u0)
        size = len(u0)
        degrees = _internal_degrees(graph.rows, mask)
        edge_count = sum(d for _, d in degrees) // 2
        if edge_count > eps0 * Fraction(size * (size - 1), 2):
            raise PreconditionError(
                f"G[U0] has {edge_count} edges, more than eps0*C(|U0|,2) = {float(eps0 * size * (size - 1) / 2):.4g}"
            )
        threshold = 2 * eps0 * size
        removed = mask_of(v for v, d in degrees if d > threshold)
        kept = mask & ~removed
        if self.check_invariants:
            if 2 * removed.bit_count() > size:
                self._breach(f"trimmed {removed.bit_count()} of {size} vertices")
            if any((graph.rows[v] & kept).bit_count() > threshold for v in iter_bits(kept)):
                self._breach("degree bound 2*eps0*|U0| fails after trimming")
        return tuple(iter_bits(kept))

    def _peel(self, rows: Sequence[int], mask: int, eps: Fraction) -> int:
        while mask:
            degrees = _internal_degrees(rows, mask)
            v, top = max(degrees, key=lambda item: (item[1], -item[0]))
            if top <= eps * mask.bit_count():
                return mask
            mask &= ~(1 << v)
        return mask

    def peel_to_degree_bound(self, graph: OrderedGraph, vertices: Sequence[int], eps: Rational,
                             side: GraphSide = GraphSide.GRAPH) -> TrimResult:
        """Retire le sommet de plus haut degré tant que Δ(side(G)[U]) > ε|U|"""
        eps = as_fraction(eps)
        working = side.apply(graph)
        mask = self._peel(working.rows, mask_of(graph.check_vertices(vertices)), eps)
        return TrimResult(tuple(iter_bits(mask)), side)

    def find_low_degree_side(self, graph: OrderedGraph, eps: Rational) -> TrimResult:
        """Le plus grand des côtés trouvés par find_low_degree_sides"""
        return self.find_low_degree_sides(graph, eps)[0]

    def find_low_degree_sides(self, graph: OrderedGraph, eps: Rational) -> Tuple[TrimResult, ...]:
        """
        Cherche U non vide avec Δ(G[U]) ≤ ε|U| ou Δ(Ḡ[U]) ≤ ε|U|.

        Tant qu'aucun côté n'est ε/2-creux, on coupe selon le sommet de degré
        médian et on garde la plus grande moitié ; les petites feuilles sont
        résolues exhaustivement. Quand les deux côtés sont creux au même
        niveau, les deux sont rendus, le plus grand en premier.
        """
        if graph.n < 1:
            raise PreconditionError("graph must have at least one vertex")
        eps = as_fraction(eps)
        eps0 = eps / 2
        sides = {GraphSide.GRAPH: graph, GraphSide.COMPLEMENT: graph.complement()}
        mask = graph.full_mask
        depth_cap = max(1, math.ceil(math.log2(graph.n))) if graph.n > 1 else 1

        for depth in range(depth_cap + 1):
            size = mask.bit_count()
            found: List[TrimResult] = []
            for side, working in sides.items():
                edge_count = sum((working.rows[v] & mask).bit_count() for v in iter_bits(mask)) // 2
                if edge_count <= eps0 * Fraction(size * (size - 1), 2):
                    trimmed = mask_of(self.trim_high_degree(working, members(mask), eps0))
                    found.append(TrimResult(tuple(iter_bits(self._peel(working.rows, trimmed, eps))), side))
            if found:
                found.sort(key=lambda r: -len(r.vertices))
                for result in found:
                    self.logger.debug(f"Low-degree side {result.side.value} at depth {depth}: |U|={len(result.vertices)}")
                return tuple(self._checked(sides, result, eps) for result in found)

            if size <= EXHAUSTIVE_LEAF:
                return (self._checked(sides, self._exhaustive_leaf(sides, mask, eps), eps),)
            if depth == depth_cap:
                break
            degrees = sorted(_internal_degrees(graph.rows, mask), key=lambda item: (item[1], item[0]))
            pivot = degrees[len(degrees) // 2][0]
            inside = mask & graph.rows[pivot]
            outside = mask & ~graph.rows[pivot] & ~(1 << pivot)
            mask = inside if inside.bit_count() >= outside.bit_count() else outside

        peeled = [TrimResult(tuple(iter_bits(self._peel(working.rows, mask, eps))), side)
                  for side, working in sides.items()]
        return (self._checked(sides, max(peeled, key=lambda r: len(r.vertices)), eps),)

    def _exhaustive_leaf(self, sides, mask: int, eps: Fraction) -> TrimResult:
        vertices = members(mask)
        for r in range(len(vertices), 0, -1):
            for subset in itertools.combinations(vertices, r):
                sub_mask = mask_of(subset)
                for side, working in sides.items():
                    if _within_bound(working.rows, sub_mask, eps):
                        return TrimResult(subset, side)
        raise InvariantBreachError("empty leaf in low-degree search")

    def _checked(self, sides, result: TrimResult, eps: Fraction) -> TrimResult:
        if not result.vertices or not _within_bound(sides[result.side].rows, mask_of(result.vertices), eps):
            self._breach(f"low-degree side {result.side.value} fails Δ <= eps|U| for |U|={len(result.vertices)}")
        return result

    # Extraction

    def _exact_pair(self, graph: OrderedGraph) -> Tuple[VertexSet, VertexSet]:
        complement = graph.complement()
        clique = _max_clique_mask(graph.rows, graph.full_mask)
        independent = _max_clique_mask(complement.rows, graph.full_mask)
        return tuple(iter_bits(clique)), tuple(iter_bits(independent))

    def _greedy_pair(self, graph: OrderedGraph) -> Tuple[VertexSet, VertexSet]:
        complement = graph.complement()
        return (tuple(iter_bits(_greedy_clique_mask(graph.rows, graph.full_mask))),
                tuple(iter_bits(_greedy_clique_mask(complement.rows, graph.full_mask))))

    def extract_homogeneous(self, graph: OrderedGraph, consts: QehConstants, seed: int = 0,
                            base_size: Optional[int] = None) -> HomogeneousResult:
        """Le chemin monotone interdit est de taille consts.k"""
        base_size = base_size or self.base_size
        streams = RandomStreams(seed)
        diagnostics: List[str] = []
        clique, independent = self._solve(graph, tuple(range(graph.n)), consts, streams,
                                          base_size, diagnostics, depth=0)
        if len(clique) >= len(independent):
            result = HomogeneousResult(tuple(sorted(clique)), HomogeneousKind.CLIQUE, tuple(diagnostics))
        else:
            result = HomogeneousResult(tuple(sorted(independent)), HomogeneousKind.INDEPENDENT,
                                       tuple(diagnostics))
        if not self.is_homogeneous(graph, result.vertices, result.kind):
            self._breach(f"extracted {result.kind.value} of size {result.size} is not homogeneous")
        self.logger.info(f"Homogeneous set: {result.kind.value} of size {result.size} (n={graph.n})")
        return result

    def _solve(self, graph: OrderedGraph, labels: VertexSet, consts: QehConstants,
               streams: RandomStreams, base_size: int, diagnostics: List[str],
               depth: int) -> Tuple[VertexSet, VertexSet]:
        """(meilleure clique, meilleur stable) de G[labels], en étiquettes de G"""
        sub, index_map = graph.induced_subgraph(labels)
        if sub.n <= base_size:
            clique, independent = self._exact_pair(sub)
            return tuple(index_map[v] for v in clique), tuple(index_map[v] for v in independent)

        cliques: List[VertexSet] = []
        independents: List[VertexSet] = []

        greedy_clique, greedy_independent = self._greedy_pair(sub)
        cliques.append(greedy_clique)
        independents.append(greedy_independent)

        rng = streams.stream("sample", depth, labels[0], len(labels))
        sample = tuple(sorted(int(v) for v in rng.choice(sub.n, size=base_size, replace=False)))
        sample_graph, _ = sub.induced_subgraph(sample)
        sample_clique, sample_independent = self._exact_pair(sample_graph)
        cliques.append(tuple(sample[v] for v in sample_clique))
        independents.append(tuple(sample[v] for v in sample_independent))

        for trim in self.find_low_degree_sides(sub, consts.eps):
            self._explore_side(sub, index_map, trim, consts, streams, base_size, diagnostics, depth,
                               cliques, independents)

        clique = max(cliques, key=len)
        independent = max(independents, key=len)
        return tuple(index_map[v] for v in clique), tuple(index_map[v] for v in independent)

    def _explore_side(self, sub: OrderedGraph, index_map: VertexSet, trim: TrimResult, consts: QehConstants,
                      streams: RandomStreams, base_size: int, diagnostics: List[str], depth: int,
                      cliques: List[VertexSet], independents: List[VertexSet]) -> None:
        """Décomposition quasi-EH d'un côté creux, puis récursion dans chaque ensemble de la famille"""
        working, u_map = trim.side.apply(sub).induced_subgraph(trim.vertices)
        if working.n < 2:
            return
        side = trim.side.value
        try:
            result = self.qeh_service.qeh_decompose(
                working, consts, streams.child_seed("qeh", side, depth, index_map[0], len(index_map))
            )
        except (PreconditionError, InvariantBreachError, EmbeddingError) as e:
            self.logger.warning(f"Quasi-EH step failed at depth {depth} on the {side} side: {e}")
            diagnostics.append(f"depth {depth}: quasi-EH step failed on the {side} side ({e}); sample fallback used")
            return

        if isinstance(result, FamilyResult):
            parts = [tuple(u_map[v] for v in x_set) for x_set in result.sets]
            children = [
                self._solve(sub, part, consts, streams, base_size, diagnostics, depth + 1)
                for part in parts
            ]
            if trim.side is GraphSide.GRAPH:
                merged = tuple(sorted(v for _, child in children for v in child))
                self._check_union(sub, merged, HomogeneousKind.INDEPENDENT)
                independents.append(merged)
                cliques.extend(child for child, _ in children)
            else:
                merged = tuple(sorted(v for child, _ in children for v in child))
                self._check_union(sub, merged, HomogeneousKind.CLIQUE)
                cliques.append(merged)
                independents.extend(child for _, child in children)
        elif isinstance(result, PathResult):
            diagnostics.append(
                f"depth {depth}: induced monotone path of size {consts.k} on the {side} side "
                f"at {list(index_map[u_map[v]] for v in result.vertices)}; input is outside P_{consts.k}"
            )

    def _check_union(self, graph: OrderedGraph, vertices: VertexSet, kind: HomogeneousKind) -> None:
        if self.check_invariants and not self.is_homogeneous(graph, vertices, kind):
            self._breach(f"union of {kind.value} sets across the family is not {kind.value}")
