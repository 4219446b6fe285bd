# orl/infrastructure/certifiers/spectral.py
"""
Borne spectrale (Tanner) : pour H d-régulier de seconde valeur propre
absolue μ, tout U avec |U| ≤ n/2 vérifie

    |N[U]| ≥ 2d² / (d² + μ²) · |U|,   d'où   λ ≥ (d² − μ²) / (d² + μ²).

La valeur flottante est arrondie vers le bas au millionième.
"""
import math
from fractions import Fraction
from typing import Tuple

import numpy as np

from orl.domain.construction import CertificationMode
from orl.domain.ordered_graph import OrderedGraph, VertexSet

from .base import BaseCertifier

RESOLUTION = 10 ** 6
SLACK = 1e-9


def adjacency_matrix(graph: OrderedGraph) -> np.ndarray:
    matrix = np.zeros((graph.n, graph.n), dtype=np.float64)
    for u, v in graph.edges():
        matrix[u, v] = matrix[v, u] = 1.0
    return matrix


class SpectralCertifier(BaseCertifier):

    mode = CertificationMode.SPECTRAL

    def second_eigenvalue(self, graph: OrderedGraph) -> float:
        """μ = max |μ_i| hors de la valeur propre triviale d"""
        eigenvalues = np.linalg.eigvalsh(adjacency_matrix(graph))
        absolute = np.sort(np.abs(eigenvalues))
        return float(absolute[-2])

    def _do_certify(self, graph: OrderedGraph, degree: int, seed: int) -> Tuple[Fraction, VertexSet]:
        if degree == 0:
            return Fraction(0), ()
        mu = self.second_eigenvalue(graph)
        d_sq = degree * degree
        bound = (d_sq - mu * mu) / (d_sq + mu * mu)
        self.logger.debug(f"mu={mu:.9g}, raw bound {bound:.9g}")
        rounded = max(0, math.floor((bound - SLACK) * RESOLUTION))
        return Fraction(rounded, RESOLUTION), ()
