# orl/infrastructure/services/embedding_service.py
"""
Service de décomposition bipartie : sommet dense, paire creuse ou
familles séparées.

L'algorithme principal travaille sur le graphe élagué H' (classes de taille
n' = ⌈n/2⌉, positions locales en masques de bits). Toute issue est vérifiée
contre H avant d'être rendue ; une issue du chemin principal qui échoue sous
le profil actif cède la place à une recherche gloutonne de paire creuse.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from orl.domain.embedding import (
    DenseVertex, EmbeddingConstants, EmbeddingOutcome, EmbeddingTrace, MainState,
    OutcomeRoute, SeparatedFamilies, SparsePair, SubState,
)
from orl.domain.errors import EmbeddingError, InvariantBreachError, PreconditionError
from orl.domain.ordered_graph import BipartiteOrderedGraph, iter_bits, members


def _floor_log2_plus_one(x: Fraction) -> int:
    """⌊log₂ x⌋ + 1, ramené à 0 quand x < 1"""
    if x < 1:
        return 0
    return math.floor(x).bit_length()


def _family_size_ok(t: int, size: int, n: int, alpha1: Fraction) -> bool:
    """t ≥ α₁·(n/|X|)^{1/2}, sous forme exacte t²|X| ≥ α₁²n"""
    return size > 0 and t * t * size >= alpha1 * alpha1 * n


def _pair_size_ok(size: int, n: int, alpha1: Fraction) -> bool:
    """2 > α₁·(n/|X|)^{1/2}, sous forme exacte 4|X| > α₁²n"""
    return size > 0 and 4 * size > alpha1 * alpha1 * n


class _TrimmedGraph:
    """H' en positions locales, avec la correspondance vers les étiquettes de H"""

    def __init__(self, a_labels: List[int], b_labels: List[int], rows_a: List[int]):
        self.n = len(a_labels)
        self.a_labels = a_labels
        self.b_labels = b_labels
        self.rows_a = rows_a
        rows_b = [0] * len(b_labels)
        for i, row in enumerate(rows_a):
            for j in iter_bits(row):
                rows_b[j] |= 1 << i
        self.rows_b = rows_b

    def a_set(self, mask: int) -> Tuple[int, ...]:
        return tuple(self.a_labels[i] for i in iter_bits(mask))

    def b_set(self, mask: int) -> Tuple[int, ...]:
        return tuple(self.b_labels[j] for j in iter_bits(mask))


class EmbeddingService:

    MAX_CASE1_ATTEMPTS = 64

    def __init__(self, check_invariants: bool = True):
        self.logger = logging.getLogger(__name__)
        self.check_invariants = check_invariants

    # API publique

    def embed_decompose(self, graph: BipartiteOrderedGraph, constants: EmbeddingConstants,
                        seed: int = 0) -> EmbeddingOutcome:
        outcome, _ = self.decompose_with_trace(graph, constants, seed)
        return outcome

    def decompose_with_trace(self, graph: BipartiteOrderedGraph, constants: EmbeddingConstants,
                             seed: int = 0) -> Tuple[EmbeddingOutcome, Optional[EmbeddingTrace]]:
        n = graph.n_a
        if graph.n_b != n:
            raise PreconditionError(f"classes must have equal size (|A|={graph.n_a}, |B|={graph.n_b})")
        if n < 2:
            raise PreconditionError(f"class size must be >= 2, got {n}")

        degrees = [row.bit_count() for row in graph.a_rows]
        best = max(range(n), key=lambda i: (degrees[i], -i))
        if degrees[best] >= constants.eps1 * n:
            self.logger.debug(f"Dense vertex {graph.a_vertices[best]} (degree {degrees[best]})")
            return DenseVertex(graph.a_vertices[best], degrees[best]), None

        trimmed = self._trim(graph, constants)
        rng = np.random.default_rng(seed)
        run = _MainRun(self, trimmed, constants, n, rng)
        candidate = run.execute()
        trace = run.trace()

        if self.verify_outcome(graph, candidate, constants):
            return candidate, trace

        self.logger.warning(
            f"Main algorithm outcome '{candidate.kind.value}' fails under profile "
            f"{constants.profile.value} (n={n}); trying greedy sparse pair"
        )
        fallback = self._greedy_sparse_pair(graph, constants)
        if fallback is not None and self.verify_outcome(graph, fallback, constants):
            return fallback, trace
        message = f"no verifiable outcome for n={n} under profile {constants.profile.value}"
        self.logger.error(message)
        raise EmbeddingError(message)

    def verify_outcome(self, graph: BipartiteOrderedGraph, outcome: EmbeddingOutcome,
                       constants: EmbeddingConstants) -> bool:
        """Vérification directe sur H, indépendante de l'algorithme"""
        n = graph.n_a
        try:
            if isinstance(outcome, DenseVertex):
                if outcome.vertex not in graph.a_index:
                    return False
                return len(graph.a_neighbors(outcome.vertex)) >= constants.eps1 * n

            if isinstance(outcome, SparsePair):
                a_side, b_side = outcome.a_side, outcome.b_side
                if not self._proper_subset(a_side, graph.a_index) or \
                        not self._proper_subset(b_side, graph.b_index):
                    return False
                if set(graph.neighborhood_of_a(a_side)) & set(b_side):
                    return False
                return _pair_size_ok(len(a_side), n, constants.alpha1) and \
                    _pair_size_ok(len(b_side), n, constants.alpha1)

            if isinstance(outcome, SeparatedFamilies):
                t = outcome.t
                if t < 2 or len(outcome.w_sets) != t:
                    return False
                seen_w, seen_x = set(), set()
                for w_set, x_set in zip(outcome.w_sets, outcome.x_sets):
                    if not self._proper_subset(w_set, graph.a_index) or \
                            not self._proper_subset(x_set, graph.b_index):
                        return False
                    if seen_w & set(w_set) or seen_x & set(x_set):
                        return False
                    seen_w.update(w_set)
                    seen_x.update(x_set)
                    if not _family_size_ok(t, len(x_set), n, constants.alpha1):
                        return False
                neighborhoods = [set(graph.neighborhood_of_a(w)) for w in outcome.w_sets]
                for i, x_set in enumerate(outcome.x_sets):
                    for j, reach in enumerate(neighborhoods):
                        if i == j and not set(x_set) <= reach:
                            return False
                        if i != j and set(x_set) & reach:
                            return False
                return True
        except KeyError:
            return False
        return False

    # Étapes internes

    @staticmethod
    def _proper_subset(labels, index: Dict[int, int]) -> bool:
        return len(labels) > 0 and len(set(labels)) == len(labels) and all(v in index for v in labels)

    def _trim(self, graph: BipartiteOrderedGraph, constants: EmbeddingConstants) -> _TrimmedGraph:
        """H' : B' sans les sommets de degré > 2ε₁n, A' = les plus reliés à B'"""
        n = graph.n_a
        n_half = (n + 1) // 2
        limit = 2 * constants.eps1 * n
        b_deg = [row.bit_count() for row in graph.b_rows]
        low_b = [j for j in range(n) if b_deg[j] <= limit]
        if len(low_b) < n_half:
            raise InvariantBreachError(
                f"only {len(low_b)} B-vertices of degree <= 2*eps1*n, need {n_half}"
            )
        # on retire en plus les sommets de plus faible degré
        keep_b = sorted(sorted(low_b, key=lambda j: (b_deg[j], j))[len(low_b) - n_half:])
        kb = 0
        for j in keep_b:
            kb |= 1 << j
        a_deg = [(row & kb).bit_count() for row in graph.a_rows]
        keep_a = sorted(sorted(range(n), key=lambda i: (-a_deg[i], i))[:n_half])

        local_b = {j: pos for pos, j in enumerate(keep_b)}
        rows_a = []
        for i in keep_a:
            row = 0
            for j in iter_bits(graph.a_rows[i] & kb):
                row |= 1 << local_b[j]
            rows_a.append(row)
        self.logger.debug(f"Trimmed {n} -> {n_half} per class")
        return _TrimmedGraph(
            [graph.a_vertices[i] for i in keep_a],
            [graph.b_vertices[j] for j in keep_b],
            rows_a,
        )

    def _greedy_sparse_pair(self, graph: BipartiteOrderedGraph,
                            constants: EmbeddingConstants) -> Optional[SparsePair]:
        """Fait croître X₁ en ajoutant le sommet qui élargit le moins N(X₁) ; X₂ = reste de l'autre classe"""
        n = graph.n_a
        min_size = math.floor(constants.alpha1 * constants.alpha1 * n / 4) + 1
        if min_size > n:
            return None
        full = (1 << n) - 1
        for from_a in (True, False):
            rows = graph.a_rows if from_a else graph.b_rows
            chosen, covered = 0, 0
            for _ in range(min_size):
                best_v, best_cover = -1, None
                for v in iter_bits(full & ~chosen):
                    cover = (covered | rows[v]).bit_count()
                    if best_cover is None or cover < best_cover:
                        best_v, best_cover = v, cover
                chosen |= 1 << best_v
                covered |= rows[best_v]
            other = full & ~covered
            if other.bit_count() < min_size:
                continue
            if from_a:
                pair = SparsePair(tuple(graph.a_vertices[i] for i in iter_bits(chosen)),
                                  tuple(graph.b_vertices[j] for j in iter_bits(other)),
                                  OutcomeRoute.FALLBACK)
            else:
                pair = SparsePair(tuple(graph.a_vertices[i] for i in iter_bits(other)),
                                  tuple(graph.b_vertices[j] for j in iter_bits(chosen)),
                                  OutcomeRoute.FALLBACK)
            self.logger.debug(f"Greedy sparse pair: |X1|={len(pair.a_side)} |X2|={len(pair.b_side)}")
            return pair
        return None


class _MainRun:
    """Une exécution de l'algorithme principal sur H'"""

    def __init__(self, service: EmbeddingService, trimmed: _TrimmedGraph,
                 constants: EmbeddingConstants, original_n: int, rng: np.random.Generator):
        self.service = service
        self.logger = service.logger
        self.h = trimmed
        self.constants = constants
        self.original_n = original_n
        self.rng = rng
        n = trimmed.n
        full = (1 << n) - 1
        j0 = _floor_log2_plus_one(constants.eps * n)
        self.state = MainState(n=n, a_mask=full, b_mask=full, level=j0, j0=j0)
        self.sub_rounds = 0
        self.case1_attempts = 0
        self.derandomized = False
        self.closing_threshold: Optional[Fraction] = None
        self.target_threshold: Optional[Fraction] = None

    def trace(self) -> EmbeddingTrace:
        return EmbeddingTrace(
            trimmed_n=self.state.n, j0=self.state.j0, main_steps=self.state.steps,
            sub_rounds=self.sub_rounds, case1_attempts=self.case1_attempts,
            derandomized=self.derandomized, closing_threshold=self.closing_threshold,
            target_threshold=self.target_threshold,
        )

    # Invariants

    def _t(self, j: int) -> float:
        return math.sqrt(self.state.n * 2 ** j)

    def _breach(self, message: str) -> None:
        self.logger.error(message)
        raise InvariantBreachError(message)

    def _check_sum_bound(self) -> None:
        if not (self.service.check_invariants and self.constants.enforces_sum_bound):
            return
        total = math.fsum(self._t(i) for i in range(1, self.state.j0 + 1))
        if not total < self.state.n / 4:
            self._breach(f"threshold sum {total:.3f} is not below n/4 = {self.state.n / 4}")

    def _check_conditions(self) -> None:
        if not self.service.check_invariants:
            return
        s = self.state
        if s.a_mask & s.a_star or s.b_mask & s.b_star:
            self._breach("active and leftover sets overlap")
        if (s.a_mask | s.a_star).bit_count() != s.n or (s.b_mask | s.b_star).bit_count() != s.n:
            self._breach("class partition broken: |A|+|A*| or |B|+|B*| differs from n")
        budget = 2 * math.fsum(self._t(i) for i in range(s.level + 1, s.j0 + 1))
        slack = 1e-9 * max(1.0, budget)
        if s.a_star.bit_count() > budget + slack or s.b_star.bit_count() > budget + slack:
            self._breach(
                f"leftover sets too large at J={s.level}: |A*|={s.a_star.bit_count()}, "
                f"|B*|={s.b_star.bit_count()}, bound {budget:.3f}"
            )
        cap = 1 << s.level
        for w in iter_bits(s.b_mask):
            if (self.h.rows_b[w] & s.a_mask).bit_count() >= cap:
                self._breach(f"B-position {w} has degree >= 2^J into A at J={s.level}")

    # Algorithme principal

    def execute(self) -> EmbeddingOutcome:
        s = self.state
        self._check_sum_bound()
        self._check_conditions()
        while True:
            s.steps += 1
            if s.level == 0:
                self.logger.debug("J reached 0: emitting (A, B)")
                return SparsePair(self.h.a_set(s.a_mask), self.h.b_set(s.b_mask))

            classes = [0] * (s.level + 1)
            for w in iter_bits(s.b_mask):
                degree = (self.h.rows_b[w] & s.a_mask).bit_count()
                classes[degree.bit_length()] |= 1 << w

            k = None
            for j in range(s.level, 0, -1):
                size = classes[j].bit_count()
                if s.threshold_sq(j) < size * size:
                    k = j
                    break
            if k is None:
                self.logger.debug(f"No level with t_k < |V_k| at J={s.level}: emitting (A, V0)")
                return SparsePair(self.h.a_set(s.a_mask), self.h.b_set(classes[0]))

            for i in range(k + 1, s.level + 1):
                s.b_mask &= ~classes[i]
                s.b_star |= classes[i]
            s.level = k
            self._check_conditions()
            self.logger.debug(f"Main step {s.steps}: k={k}, |V_k|={classes[k].bit_count()}")

            outcome = self._sub_algorithm(classes[k], k)
            if outcome is not None:
                return outcome
            self._check_conditions()

    def _sub_algorithm(self, z: int, k: int) -> Optional[EmbeddingOutcome]:
        s = self.state
        sub = SubState(z_mask=z, level=k)
        tk_sq = s.threshold_sq(k)
        half = 1 << (k - 1)
        while True:
            self.sub_rounds += 1
            sub.rounds += 1
            zs = sub.z_size
            sub.history.append(zs)
            if zs * zs < 4 * tk_sq:
                s.b_mask &= ~sub.z_mask
                s.b_star |= sub.z_mask
                s.level = k - 1
                self._check_heavy(sub, tk_sq)
                self.logger.debug(f"Sub-algorithm at k={k} closed after {sub.rounds} rounds")
                return None

            heavy = 0
            for v in iter_bits(s.a_mask):
                if (self.h.rows_a[v] & sub.z_mask).bit_count() * s.n >= zs * zs:
                    heavy |= 1 << v
            s.a_mask &= ~heavy
            s.a_star |= heavy
            sub.heavy_total += heavy.bit_count()

            t_mask = 0
            for w in iter_bits(sub.z_mask):
                if (self.h.rows_b[w] & s.a_mask).bit_count() >= half:
                    t_mask |= 1 << w
            if 2 * t_mask.bit_count() >= zs:
                self._check_heavy(sub, tk_sq)
                self.logger.debug(f"Case 1 at k={k}: |Z|={zs}, |T|={t_mask.bit_count()}")
                return self._case_one(sub, t_mask, k)
            sub.z_mask = t_mask

    def _check_heavy(self, sub: SubState, tk_sq: int) -> None:
        if self.service.check_invariants and sub.heavy_total * sub.heavy_total >= tk_sq \
                and sub.heavy_total > 0:
            self._breach(f"heavy vertices moved ({sub.heavy_total}) reach t_k at level {sub.level}")

    # Cas 1 : tirage de S, sommets bons, assemblage des parties

    def _good_set(self, t_mask: int, s_mask: int) -> int:
        y = 0
        for w in iter_bits(t_mask):
            if (self.h.rows_b[w] & s_mask).bit_count() == 1:
                y |= 1 << w
        return y

    def _derandomize(self, t_mask: int, p: float) -> int:
        """Espérance conditionnelle : chaque sommet de A est fixé sans faire baisser E|Y|"""
        s = self.state
        chosen = {w: 0 for w in iter_bits(t_mask)}
        undecided = {w: (self.h.rows_b[w] & s.a_mask).bit_count() for w in chosen}

        def good(c: int, u: int) -> float:
            if c >= 2:
                return 0.0
            if c == 1:
                return (1 - p) ** u
            return u * p * (1 - p) ** (u - 1) if u > 0 else 0.0

        s_mask = 0
        for v in iter_bits(s.a_mask):
            touched = members(self.h.rows_a[v] & t_mask)
            gain = sum(good(chosen[w] + 1, undecided[w] - 1) - good(chosen[w], undecided[w] - 1)
                       for w in touched)
            if gain >= 0:
                s_mask |= 1 << v
                for w in touched:
                    chosen[w] += 1
            for w in touched:
                undecided[w] -= 1
        return s_mask

    def _case_one(self, sub: SubState, t_mask: int, k: int) -> EmbeddingOutcome:
        s = self.state
        zs = sub.z_size
        p = 2.0 ** -k
        a_list = members(s.a_mask)

        best_s, best_y = 0, -1
        for attempt in range(EmbeddingService.MAX_CASE1_ATTEMPTS):
            self.case1_attempts += 1
            picks = self.rng.random(len(a_list)) < p
            s_mask = 0
            for v, picked in zip(a_list, picks):
                if picked:
                    s_mask |= 1 << v
            y_size = self._good_set(t_mask, s_mask).bit_count()
            if y_size > best_y:
                best_s, best_y = s_mask, y_size
            if 12 * y_size >= zs:
                break
        else:
            s_mask = self._derandomize(t_mask, p)
            y_size = self._good_set(t_mask, s_mask).bit_count()
            self.derandomized = True
            self.logger.debug(f"Derandomized selection: |Y|={y_size} (best sample {best_y})")
            if y_size > best_y:
                best_s, best_y = s_mask, y_size
            if 12 * best_y < zs:
                self.logger.warning(f"|Y|={best_y} below |Z|/12 with |Z|={zs}")

        y_mask = self._good_set(t_mask, best_s)
        blocks: Dict[int, int] = {}
        for w in iter_bits(y_mask):
            owner = (self.h.rows_b[w] & best_s).bit_length() - 1
            blocks[owner] = blocks.get(owner, 0) | (1 << w)
        ordered = sorted(blocks.items())

        delta_prime = min(self.constants.eps * s.n, Fraction(zs * zs, s.n))
        self.target_threshold = delta_prime
        y_count = y_mask.bit_count()
        thresholds = [delta_prime]
        thresholds += [Fraction(y_count // j) for j in range(2, 9) if y_count // j > 0]
        if y_count:
            thresholds += [Fraction(1 << e) for e in range(y_count.bit_length() - 1, -1, -1)]

        seen = set()
        first_parts = None
        for threshold in thresholds:
            if threshold in seen:
                continue
            seen.add(threshold)
            parts = self._assemble(ordered, threshold)
            if first_parts is None:
                first_parts = parts
            t = len(parts)
            if t >= 2 and all(_family_size_ok(t, x.bit_count(), self.original_n, self.constants.alpha1)
                              for _, x in parts):
                self.closing_threshold = threshold
                if threshold != delta_prime:
                    self.logger.info(f"Parts closed at {threshold} instead of {delta_prime} (t={t})")
                return self._families(parts)
        self.closing_threshold = delta_prime
        return self._families(first_parts or [])

    @staticmethod
    def _assemble(ordered: List[Tuple[int, int]], threshold: Fraction) -> List[Tuple[int, int]]:
        """Remplissage glouton des blocs Y_v ; la dernière partie incomplète rejoint la précédente"""
        parts: List[Tuple[int, int]] = []
        w_mask, x_mask = 0, 0
        for v, block in ordered:
            w_mask |= 1 << v
            x_mask |= block
            if x_mask.bit_count() >= threshold:
                parts.append((w_mask, x_mask))
                w_mask, x_mask = 0, 0
        if w_mask:
            if parts:
                last_w, last_x = parts.pop()
                parts.append((last_w | w_mask, last_x | x_mask))
            else:
                parts.append((w_mask, x_mask))
        return parts

    def _families(self, parts: List[Tuple[int, int]]) -> SeparatedFamilies:
        return SeparatedFamilies(
            tuple(self.h.a_set(w) for w, _ in parts),
            tuple(self.h.b_set(x) for _, x in parts),
        )
