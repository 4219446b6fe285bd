# orl/infrastructure/services/construction_service.py
"""
Construction par expanseurs d'un graphe ordonné sans S ni P dont le
complémentaire n'a pas de grande bi-clique.

    H d-régulier  →  puissances H^r  →  gonflement en k blocs  →  blocs complétés
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from orl.config.settings import OracleBudget
from orl.domain.construction import (
    BicliqueWitness, BlockStructure, BlowupParams, BlowupReport, CertificationMode,
    CertifiedExpander, ConstructionCertificate, PairBoundReport, PigeonholeReport,
)
from orl.domain.errors import BudgetExceededError, ParameterError, PreconditionError
from orl.domain.ordered_graph import NeighborhoodMode, OrderedGraph, iter_bits, mask_of
from orl.domain.patterns import PATTERN_P, STAR_S
from orl.infrastructure.certifiers import BaseCertifier
from orl.infrastructure.random_streams import RandomStreams
from orl.infrastructure.services.pattern_service import PatternService

MAX_PAIRING_ATTEMPTS = 10000


def _subset_neighborhoods(rows: Sequence[int]) -> List[int]:
    """Pour chaque masque X sur len(rows) positions, l'union des rows[x]"""
    table = [0] * (1 << len(rows))
    for mask in range(1, len(table)):
        low = mask & -mask
        table[mask] = table[mask ^ low] | rows[low.bit_length() - 1]
    return table


class ConstructionService:

    def __init__(self, certifiers: Dict[CertificationMode, BaseCertifier], pattern_service: PatternService,
                 budget: Optional[OracleBudget] = None, check_invariants: bool = True):
        self.logger = logging.getLogger(__name__)
        self.certifiers = certifiers
        self.pattern_service = pattern_service
        self.budget = budget or OracleBudget()
        self.check_invariants = check_invariants

    def _guard(self, kind: str, n: int) -> None:
        limit = self.budget.limit(kind)
        if limit is not None and n > limit:
            raise BudgetExceededError(kind, n, limit)

    # Expanseurs

    def random_regular(self, m: int, d: int, rng: np.random.Generator) -> OrderedGraph:
        """Modèle d'appariement : on rejette tout tirage avec boucle ou arête multiple"""
        if d < 0 or m < 1:
            raise ParameterError(f"need m >= 1 and d >= 0 (got m={m}, d={d})")
        if (d * m) % 2:
            raise ParameterError(f"d*m must be even (got d={d}, m={m})")
        if m <= d:
            raise ParameterError(f"need m > d (got m={m}, d={d})")

        stubs = np.repeat(np.arange(m), d)
        for attempt in range(1, MAX_PAIRING_ATTEMPTS + 1):
            rng.shuffle(stubs)
            edges = set()
            for u, v in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
                if u > v:
                    u, v = v, u
                if u == v or (u, v) in edges:
                    break
                edges.add((u, v))
            else:
                self.logger.debug(f"{d}-regular graph on {m} vertices after {attempt} pairing attempt(s)")
                return OrderedGraph.from_edges(m, sorted(edges))
        raise ParameterError(f"no simple {d}-regular graph on {m} vertices after {MAX_PAIRING_ATTEMPTS} attempts")

    def certify_expansion(self, graph: OrderedGraph, mode: CertificationMode = CertificationMode.EXACT,
                          seed: int = 0) -> CertifiedExpander:
        certifier = self.certifiers[CertificationMode(mode)]
        if not certifier.feasible(graph.n):
            raise BudgetExceededError("expansion", graph.n, self.budget.limit("expansion"))
        return certifier.certify(graph, seed)

    def graph_power(self, graph: OrderedGraph, r: int) -> OrderedGraph:
        """H^r sans boucles : uv arête ssi 1 ≤ dist_H(u, v) ≤ r"""
        if r < 1:
            raise ParameterError(f"power r must be >= 1, got {r}")
        rows = []
        for v in range(graph.n):
            ball = 1 << v
            for _ in range(r):
                grown = graph.neighborhood_mask(ball, NeighborhoodMode.CLOSED)
                if grown == ball:
                    break
                ball = grown
            rows.append(ball & ~(1 << v))
        return OrderedGraph.from_rows(rows, check=False)

    def check_pair_bound(self, expander: CertifiedExpander, r: int) -> PairBoundReport:
        """
        Pour tout X et tout Y disjoint de X sans arête de H^r vers X,
        |X||Y| ≤ n²(1+λ)^{-r}. Le meilleur Y pour X est V ∖ N_{H^r}[X].
        """
        if expander.mode is not CertificationMode.EXACT:
            raise PreconditionError(f"pair bound needs an exact expander, got mode {expander.mode.value}")
        n = expander.n
        self._guard("pair_bound", n)
        power = self.graph_power(expander.graph, r)
        closed_rows = [row | (1 << v) for v, row in enumerate(power.rows)]
        table = _subset_neighborhoods(closed_rows)
        full = power.full_mask
        best, best_x = 0, 0
        for x_mask in range(1, 1 << n):
            product = x_mask.bit_count() * (n - table[x_mask].bit_count())
            if product > best:
                best, best_x = product, x_mask
        report = PairBoundReport(f"H^{r}", n, r, expander.expansion, best,
                                 tuple(iter_bits(best_x)), tuple(iter_bits(full & ~table[best_x])) if best_x else ())
        self.logger.debug(f"Pair bound r={r}: max |X||Y| = {best}, bound {float(report.bound):.6g}")
        return report

    # Gonflement

    def _balls(self, graph: OrderedGraph, radius: int) -> List[int]:
        """Boules fermées de rayon `radius` (distance 0 incluse)"""
        balls = [1 << v for v in range(graph.n)]
        for _ in range(radius):
            grown = [graph.neighborhood_mask(ball, NeighborhoodMode.CLOSED) for ball in balls]
            if grown == balls:
                break
            balls = grown
        return balls

    def build_blowup(self, expander: OrderedGraph, k: int, f: int,
                     permute_seed: Optional[int] = None) -> Tuple[OrderedGraph, BlockStructure]:
        """
        k blocs A_0 ≺ … ≺ A_{k-1} de m sommets, étiquetés par φ sur V(H).

        x ∈ A_a, y ∈ A_b, a < b : xy arête ssi dist_H(φx, φy) ≤ f·2^a.
        φ est l'identité sur chaque bloc, ou une bijection tirée si
        `permute_seed` est donné.
        """
        if k < 2 or f < 1:
            raise ParameterError(f"blow-up needs k >= 2 and f >= 1 (got k={k}, f={f})")
        m = expander.n
        blocks = BlockStructure(k, m)
        if permute_seed is None:
            labels = [list(range(m)) for _ in range(k)]
        else:
            streams = RandomStreams(permute_seed)
            labels = [streams.stream("blowup-labels", a).permutation(m).tolist() for a in range(k)]
        positions = []
        for block_labels in labels:
            inverse = [0] * m
            for i, label in enumerate(block_labels):
                inverse[label] = i
            positions.append(inverse)

        rows = [0] * blocks.n
        for a in range(k - 1):
            balls = self._balls(expander, f * 2 ** a)
            for i in range(m):
                x = a * m + i
                ball = balls[labels[a][i]]
                for b in range(a + 1, k):
                    for label in iter_bits(ball):
                        y = b * m + positions[b][label]
                        rows[x] |= 1 << y
                        rows[y] |= 1 << x
        graph = OrderedGraph.from_rows(rows, check=False)
        self.logger.debug(f"Blow-up k={k} f={f} m={m}: {graph.edge_count} cross edges")
        return graph, blocks

    def find_bad_triple(self, graph: OrderedGraph, blocks: BlockStructure) -> Optional[Tuple[int, int, int]]:
        """x ∈ A_a, y ∈ A_b, z ∈ A_c, a < b < c, avec xy, xz ∈ E et yz ∉ E"""
        for x in range(graph.n):
            forward = graph.rows[x] & blocks.after_mask(blocks.block_of(x))
            for y in iter_bits(forward):
                later = forward & blocks.after_mask(blocks.block_of(y)) & ~graph.rows[y]
                if later:
                    return x, y, (later & -later).bit_length() - 1
        return None

    def _block_pair_report(self, graph: OrderedGraph, blocks: BlockStructure, a: int, b: int,
                           f: int, expansion: Fraction) -> PairBoundReport:
        m = blocks.m
        shift = b * m
        row_into_b = [(graph.rows[x] >> shift) & ((1 << m) - 1) for x in blocks.block(a)]
        table = _subset_neighborhoods(row_into_b)
        best, best_x = 0, 0
        for x_mask in range(1, 1 << m):
            product = x_mask.bit_count() * (m - table[x_mask].bit_count())
            if product > best:
                best, best_x = product, x_mask
        witness_x = tuple(a * m + i for i in iter_bits(best_x))
        witness_y = tuple(shift + j for j in iter_bits(((1 << m) - 1) & ~table[best_x])) if best_x else ()
        return PairBoundReport(f"A{a}-A{b}", m, f, expansion, best, witness_x, witness_y)

    def blowup_properties(self, graph: OrderedGraph, blocks: BlockStructure, degree: int, f: int,
                          expansion: Optional[Fraction] = None) -> BlowupReport:
        """Borne de degré, absence de triplet interdit et bornes par paires de blocs"""
        pair_reports: Tuple[PairBoundReport, ...] = ()
        limit = self.budget.limit("pair_bound")
        if expansion is not None and (limit is None or blocks.m <= limit):
            pair_reports = tuple(
                self._block_pair_report(graph, blocks, a, b, f, expansion)
                for a in range(blocks.k) for b in range(a + 1, blocks.k)
            )
        return BlowupReport(
            max_degree=graph.max_degree(),
            degree_bound=(degree + 1) ** (f * 2 ** blocks.k),
            bad_triple=self.find_bad_triple(graph, blocks),
            pair_reports=pair_reports,
        )

    # Contre-exemple complet

    def build_counterexample(self, params: BlowupParams, seed: int = 0,
                             mode: Optional[CertificationMode] = None) -> Tuple[OrderedGraph, ConstructionCertificate]:
        k, f, m = params.k, params.f, params.m
        if m < 2:
            raise ParameterError(f"block size m must be >= 2, got {m}")
        streams = RandomStreams(seed)
        deviations = list(params.deviations)

        if m <= 3:
            expander_graph = OrderedGraph.complete(m)
        else:
            d = 3 if m % 2 == 0 else 4
            if d != 3:
                deviations.append(f"expander degree raised to {d} for odd m={m}")
            expander_graph = self.random_regular(m, d, streams.stream("regular-graph"))

        if mode is None:
            exact_limit = self.budget.limit("expansion")
            mode = CertificationMode.EXACT if exact_limit is None or m <= exact_limit else CertificationMode.SPECTRAL
        expander = self.certify_expansion(expander_graph, mode, streams.child_seed("certify"))

        if k == 1:
            blowup, blocks = OrderedGraph.empty(m), BlockStructure(1, m)
            report = BlowupReport(0, 1, None)
        else:
            blowup, blocks = self.build_blowup(expander_graph, k, f)
            report = self.blowup_properties(blowup, blocks, expander.degree, f,
                                            expander.expansion if expander.certifying else None)

        rows = [row | (blocks.block_mask(blocks.block_of(v)) & ~(1 << v)) for v, row in enumerate(blowup.rows)]
        graph = OrderedGraph.from_rows(rows, check=False)

        max_degree = graph.max_degree()
        degree_target = m - 1 + blowup.max_degree()
        degree_eps_ok = None
        if params.theorem_mode and params.eps is not None:
            degree_eps_ok = max_degree <= params.eps * graph.n

        certificate = ConstructionCertificate(
            params=params,
            expander=expander,
            max_degree=max_degree,
            degree_target=degree_target,
            max_degree_ok=max_degree <= degree_target and report.degree_ok,
            no_bad_triple_ok=report.no_bad_triple_ok,
            pattern_s_free=self.pattern_service.find_induced(graph, STAR_S) is None,
            pattern_p_free=self.pattern_service.find_induced(graph, PATTERN_P) is None,
            pair_bound_report=report.pair_reports,
            degree_eps_ok=degree_eps_ok,
            deviations=tuple(deviations),
        )
        if certificate.passed:
            self.logger.info(f"Construction k={k} f={f} m={m}: all checks passed")
        else:
            self.logger.warning(f"Construction k={k} f={f} m={m}: some checks failed")
        return graph, certificate

    # Bi-cliques du complémentaire

    def find_balanced_biclique_complement(self, graph: OrderedGraph, left: Optional[Sequence[int]] = None,
                                          right: Optional[Sequence[int]] = None) -> BicliqueWitness:
        """
        Plus grande bi-clique équilibrée (A, B) de Ḡ, A ⊆ left, B ⊆ right.

        Branch and bound : chaque sommet va dans A, dans B ou nulle part.
        """
        symmetric = left is None and right is None
        left_mask = graph.full_mask if left is None else mask_of(graph.check_vertices(left))
        right_mask = graph.full_mask if right is None else mask_of(graph.check_vertices(right))
        self._guard("biclique", (left_mask | right_mask).bit_count())
        complement = graph.complement().rows

        best = [0, 0, 0]

        def record(a_mask: int, b_mask: int) -> None:
            size = min(a_mask.bit_count(), b_mask.bit_count())
            if size > best[0]:
                a_trim = sum(1 << v for v in list(iter_bits(a_mask))[:size])
                b_trim = sum(1 << v for v in list(iter_bits(b_mask))[:size])
                best[:] = [size, a_trim, b_trim]

        # Solution gloutonne initiale : chaque sommet rejoint le plus petit côté admissible
        a_mask = b_mask = 0
        cand_a, cand_b = left_mask, right_mask
        for v in range(graph.n):
            options = [side for side, cand in (("a", cand_a), ("b", cand_b)) if cand >> v & 1]
            if not options:
                continue
            side = "a" if ("a" in options and (a_mask.bit_count() <= b_mask.bit_count() or "b" not in options)) else "b"
            bit = 1 << v
            if side == "a":
                a_mask |= bit
                cand_b &= complement[v]
            else:
                b_mask |= bit
                cand_a &= complement[v]
            cand_a &= ~bit
            cand_b &= ~bit
        record(a_mask, b_mask)

        def expand(a_mask: int, b_mask: int, cand_a: int, cand_b: int) -> None:
            a_size, b_size = a_mask.bit_count(), b_mask.bit_count()
            available = cand_a | cand_b
            bound = min(a_size + cand_a.bit_count(), b_size + cand_b.bit_count(),
                        (a_size + b_size + available.bit_count()) // 2)
            if bound <= best[0]:
                return
            if not available:
                record(a_mask, b_mask)
                return
            low = available & -available
            v = low.bit_length() - 1
            branches = []
            if cand_a & low:
                branches.append((a_mask | low, b_mask, cand_a & ~low, cand_b & complement[v] & ~low))
            if cand_b & low and not (symmetric and not a_mask and not b_mask):
                branches.append((a_mask, b_mask | low, cand_a & complement[v] & ~low, cand_b & ~low))
            if a_size > b_size:
                branches.reverse()
            for branch in branches:
                record(branch[0], branch[1])
                expand(*branch)
            expand(a_mask, b_mask, cand_a & ~low, cand_b & ~low)

        expand(0, 0, left_mask, right_mask)
        return BicliqueWitness(best[0], tuple(iter_bits(best[1])), tuple(iter_bits(best[2])))

    def max_balanced_biclique_complement(self, graph: OrderedGraph, left: Optional[Sequence[int]] = None,
                                         right: Optional[Sequence[int]] = None) -> int:
        return self.find_balanced_biclique_complement(graph, left, right).size

    def biclique_pigeonhole(self, graph: OrderedGraph, blocks: BlockStructure) -> PigeonholeReport:
        """
        Une bi-clique (X, Y) de taille b dans Ḡ laisse, dans un bloc A_a et un
        bloc A_a', au moins b/k sommets de chaque côté.
        """
        if blocks.n != graph.n:
            raise PreconditionError(f"block structure covers {blocks.n} vertices, graph has {graph.n}")
        witness = self.find_balanced_biclique_complement(graph)
        k = blocks.k
        x_counts = [sum(1 for v in witness.left if blocks.block_of(v) == a) for a in range(k)]
        y_counts = [sum(1 for v in witness.right if blocks.block_of(v) == a) for a in range(k)]
        a_x = max(range(k), key=lambda a: (x_counts[a], -a))
        a_y = max(range(k), key=lambda a: (y_counts[a], -a))

        best_pair = 0
        for a in range(k):
            for b in range(a + 1, k):
                size = self.max_balanced_biclique_complement(graph, list(blocks.block(a)), list(blocks.block(b)))
                best_pair = max(best_pair, size)

        report = PigeonholeReport(witness, k, (a_x, a_y), (x_counts[a_x], y_counts[a_y]), best_pair)
        self.logger.debug(f"Bi-clique pigeonhole: b={witness.size}, k={k}, blocks={report.blocks}, "
                          f"best block pair {best_pair}")
        return report
