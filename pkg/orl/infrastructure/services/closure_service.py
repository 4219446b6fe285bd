# orl/infrastructure/services/closure_service.py
"""
Service de fermeture transitive ordonnée et d'accessibilité par bons chemins.

Les chemins monotones sont croissants : la fermeture se calcule par
programmation dynamique bit-parallèle dans l'ordre inverse de ≺.
"""
import logging
from typing import Dict, Iterable, List, Optional

from orl.domain.ordered_graph import (
    ClosureGraph, OrderedGraph, VertexSet, iter_bits, mask_of,
)


class ClosureService:

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def _forward_reach(graph: OrderedGraph, allowed: int) -> List[int]:
        """reach[u] = sommets atteints depuis u par chemin croissant dans `allowed`"""
        reach = [0] * graph.n
        for u in range(graph.n - 1, -1, -1):
            bits = 0
            for w in iter_bits(graph.forward_mask(u) & allowed):
                bits |= (1 << w) | reach[w]
            reach[u] = bits
        return reach

    def transitive_closure(self, graph: OrderedGraph) -> ClosureGraph:
        reach = self._forward_reach(graph, graph.full_mask)
        rows = list(reach)
        for u, bits in enumerate(reach):
            for w in iter_bits(bits):
                rows[w] |= 1 << u
        closure = ClosureGraph(graph.n, tuple(rows))
        self.logger.debug(f"Closure: n={graph.n}, {graph.edge_count} -> {closure.edge_count} edges")
        return closure

    def good_reach_mask(self, graph: OrderedGraph, x: int, forbidden: int = 0,
                        within: Optional[int] = None) -> int:
        """Parcours croissant depuis x ; les sommets après x évitent `forbidden`"""
        allowed = (graph.full_mask if within is None else within) & ~forbidden
        reached = 0
        pending = graph.forward_mask(x) & allowed
        while pending:
            low = pending & -pending
            pending ^= low
            reached |= low
            u = low.bit_length() - 1
            pending |= graph.forward_mask(u) & allowed & ~reached
        return reached

    def good_reachable(self, graph: OrderedGraph, x: int, forbidden: Iterable[int] = (),
                       within: Optional[int] = None) -> VertexSet:
        graph.check_vertices((x,))
        mask = mask_of(graph.check_vertices(forbidden))
        return tuple(iter_bits(self.good_reach_mask(graph, x, mask, within)))

    def forward_closure_neighborhood(self, graph: OrderedGraph, v: int) -> VertexSet:
        """Ligne N⁺ de v dans la fermeture, sans la matérialiser"""
        return self.good_reachable(graph, v)

    def good_reach_table(self, graph: OrderedGraph, sources: Iterable[int],
                         within: Optional[int] = None) -> Dict[int, int]:
        """
        Pour chaque x de X, masque des sommets atteints par un bon chemin.

        Une seule passe : les sommets intermédiaires sont pris dans
        `within` ∖ X, donc la table des accessibilités internes est partagée.
        """
        sources = graph.check_vertices(sources)
        x_mask = mask_of(sources)
        allowed = (graph.full_mask if within is None else within) & ~x_mask
        reach = self._forward_reach(graph, allowed)
        table = {}
        for x in sources:
            bits = 0
            for w in iter_bits(graph.forward_mask(x) & allowed):
                bits |= (1 << w) | reach[w]
            table[x] = bits
        return table
