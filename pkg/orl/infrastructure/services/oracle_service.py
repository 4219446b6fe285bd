# orl/infrastructure/services/oracle_service.py
"""
Oracles par force brute, volontairement lents et indépendants des chemins
rapides qu'ils contrôlent. Au-delà de leur budget ils refusent l'entrée.
"""
import itertools
import logging
from typing import List, Optional, Tuple

from orl.config.settings import OracleBudget
from orl.domain.errors import BudgetExceededError
from orl.domain.homogeneous import HomogeneousKind
from orl.domain.ordered_graph import ClosureGraph, OrderedGraph, VertexSet
from orl.domain.patterns import Embedding, OrderedPattern


class OracleService:

    def __init__(self, budget: Optional[OracleBudget] = None):
        self.logger = logging.getLogger(__name__)
        self.budget = budget or OracleBudget()

    def _guard(self, kind: str, n: int) -> None:
        limit = self.budget.limit(kind)
        if limit is not None and n > limit:
            raise BudgetExceededError(kind, n, limit)

    def brute_closure(self, graph: OrderedGraph) -> ClosureGraph:
        """Énumère toutes les suites strictement croissantes d'arêtes consécutives"""
        self._guard("closure", graph.n)
        n = graph.n
        connected = [[False] * n for _ in range(n)]
        for start in range(n):
            stack = [start]
            while stack:
                last = stack.pop()
                for nxt in range(last + 1, n):
                    if graph.adjacent(last, nxt):
                        connected[start][nxt] = True
                        stack.append(nxt)
        edges = [(x, y) for x in range(n) for y in range(x + 1, n) if connected[x][y]]
        base = OrderedGraph.from_edges(n, edges)
        return ClosureGraph(base.n, base.rows)

    def brute_pattern(self, graph: OrderedGraph, pattern: OrderedPattern) -> Optional[Embedding]:
        self._guard("pattern", graph.n)
        self._guard("pattern_size", pattern.p)
        pairs = list(itertools.combinations(range(pattern.p), 2))
        for image in itertools.combinations(range(graph.n), pattern.p):
            if all(pattern.graph.adjacent(i, j) == graph.adjacent(image[i], image[j]) for i, j in pairs):
                return Embedding(image)
        return None

    # Clique maximum : branch and bound avec borne par coloration gloutonne

    def _max_clique(self, rows: Tuple[int, ...], n: int) -> VertexSet:
        best: List[int] = []

        def color_order(candidates: int) -> List[Tuple[int, int]]:
            # (sommet, couleur) par couleur croissante
            order = []
            uncolored = candidates
            color = 0
            while uncolored:
                color += 1
                available = uncolored
                while available:
                    low = available & -available
                    v = low.bit_length() - 1
                    available &= ~low & ~rows[v]
                    uncolored &= ~low
                    order.append((v, color))
            return order

        def expand(current: List[int], candidates: int) -> None:
            nonlocal best
            order = color_order(candidates)
            for v, color in reversed(order):
                if len(current) + color <= len(best):
                    return
                current.append(v)
                remaining = candidates & rows[v]
                if remaining:
                    expand(current, remaining)
                elif len(current) > len(best):
                    best = list(current)
                current.pop()
                candidates &= ~(1 << v)

        if n:
            expand([], (1 << n) - 1)
        return tuple(sorted(best))

    def brute_max_homogeneous(self, graph: OrderedGraph) -> Tuple[int, HomogeneousKind, VertexSet]:
        """Plus grand ensemble homogène ; égalité tranchée en faveur de la clique"""
        self._guard("clique", graph.n)
        clique = self._max_clique(graph.rows, graph.n)
        independent = self._max_clique(graph.complement().rows, graph.n)
        if len(clique) >= len(independent):
            return len(clique), HomogeneousKind.CLIQUE, clique
        return len(independent), HomogeneousKind.INDEPENDENT, independent

    def max_clique(self, graph: OrderedGraph) -> VertexSet:
        self._guard("clique", graph.n)
        return self._max_clique(graph.rows, graph.n)
