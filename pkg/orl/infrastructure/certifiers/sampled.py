# orl/infrastructure/certifiers/sampled.py
"""
Estimation par échantillonnage : singletons, boules BFS puis ensembles
aléatoires. Le minimum observé majore λ : le résultat ne certifie rien.
"""
from fractions import Fraction
from typing import Optional, Tuple

from orl.config.settings import OracleBudget
from orl.domain.construction import CertificationMode
from orl.domain.ordered_graph import NeighborhoodMode, OrderedGraph, VertexSet, iter_bits
from orl.infrastructure.random_streams import RandomStreams

from .base import BaseCertifier


class SampledCertifier(BaseCertifier):

    mode = CertificationMode.SAMPLED

    def __init__(self, budget: Optional[OracleBudget] = None, trials: int = 2000):
        super().__init__(budget)
        self.trials = trials

    def _candidates(self, graph: OrderedGraph, seed: int):
        half = graph.n // 2
        for v in range(graph.n):
            yield 1 << v
        for v in range(graph.n):
            ball = 1 << v
            while True:
                grown = graph.neighborhood_mask(ball, NeighborhoodMode.CLOSED)
                if grown == ball or grown.bit_count() > half:
                    break
                ball = grown
                yield ball
        rng = RandomStreams(seed).stream("sampled-expansion")
        for _ in range(self.trials):
            size = int(rng.integers(1, half + 1))
            chosen = rng.choice(graph.n, size=size, replace=False)
            mask = 0
            for v in chosen:
                mask |= 1 << int(v)
            yield mask

    def _do_certify(self, graph: OrderedGraph, degree: int, seed: int) -> Tuple[Fraction, VertexSet]:
        best: Optional[Fraction] = None
        best_mask = 0
        for mask in self._candidates(graph, seed):
            ratio = Fraction(graph.neighborhood_mask(mask, NeighborhoodMode.CLOSED).bit_count(),
                             mask.bit_count())
            if best is None or ratio < best:
                best, best_mask = ratio, mask
        self.logger.warning(f"Sampled lambda {best - 1} is an upper estimate, not a certificate")
        return best - 1, tuple(iter_bits(best_mask))
