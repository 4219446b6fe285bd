# orl/infrastructure/certifiers/exact.py
"""
Certification exacte : énumération de tous les U avec |U| ≤ n/2.

Les masques sont traités par tranches numpy ; |N[U]| est obtenu par une
table de popcount sur les octets.
"""
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from orl.domain.construction import CertificationMode
from orl.domain.ordered_graph import OrderedGraph, VertexSet, iter_bits

from .base import BaseCertifier

CHUNK = 1 << 16
MAX_BITS = 62

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def popcount(values: np.ndarray) -> np.ndarray:
    as_bytes = values.astype(np.int64).view(np.uint8).reshape(-1, 8)
    return _POPCOUNT[as_bytes].sum(axis=1, dtype=np.int64)


class ExactCertifier(BaseCertifier):

    mode = CertificationMode.EXACT

    def feasible(self, n: int) -> bool:
        limit = self.budget.limit("expansion")
        return n <= MAX_BITS and (limit is None or n <= limit)

    def _do_certify(self, graph: OrderedGraph, degree: int, seed: int) -> Tuple[Fraction, VertexSet]:
        n = graph.n
        closed_rows = [row | (1 << v) for v, row in enumerate(graph.rows)]
        best: Optional[Fraction] = None
        best_mask = 0
        for start in range(1, 1 << n, CHUNK):
            masks = np.arange(start, min(start + CHUNK, 1 << n), dtype=np.int64)
            sizes = popcount(masks)
            keep = 2 * sizes <= n
            if not keep.any():
                continue
            masks, sizes = masks[keep], sizes[keep]
            closed = np.zeros_like(masks)
            for v in range(n):
                closed |= np.where((masks >> v) & 1, np.int64(closed_rows[v]), np.int64(0))
            ratios = popcount(closed) / sizes
            i = int(np.argmin(ratios))
            candidate = Fraction(int(popcount(closed[i:i + 1])[0]), int(sizes[i]))
            if best is None or candidate < best:
                best = candidate
                best_mask = int(masks[i])
        return best - 1, tuple(iter_bits(best_mask))
