# orl/infrastructure/services/pattern_service.py
"""
Recherche de sous-graphes ordonnés induits par retour arrière sur masques.

Les candidats sont parcourus par indices croissants : le premier plongement
trouvé est le plus petit lexicographiquement.
"""
import logging
from typing import List, Optional

from orl.domain.errors import PreconditionError
from orl.domain.ordered_graph import OrderedGraph, iter_bits
from orl.domain.patterns import (
    Embedding, OrderedPattern, MAX_PATTERN_VERTICES,
)


class PatternService:

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def find_induced(self, graph: OrderedGraph, pattern: OrderedPattern) -> Optional[Embedding]:
        p = pattern.p
        if p > MAX_PATTERN_VERTICES:
            raise PreconditionError(f"pattern has {p} vertices (max {MAX_PATTERN_VERTICES})")
        if p == 0:
            return Embedding(())
        if p > graph.n:
            return None

        n = graph.n
        image: List[int] = []

        def extend(i: int) -> bool:
            # candidats : après l'image précédente, en laissant la place aux suivants
            low = image[-1] + 1 if image else 0
            high = n - (p - i)
            if low > high:
                return False
            candidates = ((1 << (high + 1)) - 1) & ~((1 << low) - 1)
            for j, u in enumerate(image):
                if pattern.graph.adjacent(i, j):
                    candidates &= graph.rows[u]
                else:
                    candidates &= ~graph.rows[u]
                if not candidates:
                    return False
            for v in iter_bits(candidates):
                image.append(v)
                if i + 1 == p or extend(i + 1):
                    return True
                image.pop()
            return False

        if extend(0):
            embedding = Embedding(tuple(image))
            self.logger.debug(f"Pattern {pattern.name} found at {embedding.mapping}")
            return embedding
        return None

    def find_induced_monotone_path(self, graph: OrderedGraph, k: int) -> Optional[Embedding]:
        """
        Chemin monotone induit de taille k, par DFS : le sommet suivant est dans
        N⁺(dernier) et hors des voisinages des sommets antérieurs.
        """
        if k < 1:
            raise PreconditionError(f"path size must be >= 1, got {k}")
        n = graph.n
        if k > n:
            return None
        if k == 1:
            return Embedding((0,))

        path: List[int] = []

        def extend(blocked: int) -> bool:
            last = path[-1]
            remaining = k - len(path)
            high = n - remaining
            candidates = graph.forward_mask(last) & ~blocked & ((1 << (high + 1)) - 1)
            for v in iter_bits(candidates):
                path.append(v)
                if len(path) == k or extend(blocked | graph.rows[last] | (1 << last)):
                    return True
                path.pop()
            return False

        for start in range(n - k + 1):
            if not graph.forward_mask(start):
                continue
            path.append(start)
            if extend(0):
                return Embedding(tuple(path))
            path.pop()
        return None

    def is_family_member(self, graph: OrderedGraph, k: int) -> bool:
        """G ∈ 𝒫_k : ni G ni son complémentaire ne contient de chemin monotone induit de taille k"""
        if k < 2:
            raise PreconditionError(f"family index k must be >= 2, got {k}")
        if self.find_induced_monotone_path(graph, k) is not None:
            return False
        return self.find_induced_monotone_path(graph.complement(), k) is None
