# orl/infrastructure/services/qeh_service.py
"""
Service quasi-Erdős–Hajnal : construit pas à pas un chemin monotone induit
x_1 ≺ … ≺ x_k, ou s'arrête sur une grande famille d'ensembles deux à deux
non adjacents. Chaque pas délègue au service de plongement biparti.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Union

from orl.domain.embedding import DenseVertex, EmbeddingOutcome, SeparatedFamilies, SparsePair
from orl.domain.errors import InvariantBreachError, ParameterError, PreconditionError
from orl.domain.ordered_graph import BipartiteOrderedGraph, OrderedGraph, iter_bits, mask_of, members
from orl.domain.qeh import (
    FamilyResult, PathResult, PathState, QehConstants, QehResult, QuasiMode, StepRecord,
)
from orl.infrastructure.random_streams import RandomStreams
from orl.infrastructure.services.closure_service import ClosureService
from orl.infrastructure.services.embedding_service import EmbeddingService

HALF = Fraction(1, 2)


def is_induced_monotone_path(graph: OrderedGraph, vertices: Sequence[int]) -> bool:
    if any(not 0 <= v < graph.n for v in vertices):
        return False
    for i, u in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            w = vertices[j]
            if u >= w:
                return False
            if graph.adjacent(u, w) != (j == i + 1):
                return False
    return True


class QehService:

    def __init__(self, closure_service: ClosureService, embedding_service: EmbeddingService,
                 check_invariants: bool = True):
        self.logger = logging.getLogger(__name__)
        self.closure_service = closure_service
        self.embedding_service = embedding_service
        self.check_invariants = check_invariants

    # Constantes et vérifications

    @staticmethod
    def quasi_constants_normalize(alpha: Union[float, Fraction], beta: Union[float, Fraction]) -> float:
        """c tel que t ≥ α(n/|X|)^β et t ≥ 2 entraînent t ≥ (n/|X|)^c"""
        if alpha <= 0 or beta <= 0:
            raise ParameterError(f"alpha and beta must be positive (got {alpha}, {beta})")
        if alpha > 1:
            return float(beta)
        return float(beta) / (1 - math.log2(alpha))

    def verify_quasi_family(self, graph: OrderedGraph, sets: Sequence[Sequence[int]],
                            alpha_sq: Union[Fraction, float], beta: Union[Fraction, float] = HALF,
                            mode: QuasiMode = QuasiMode.INDEPENDENT) -> bool:
        t = len(sets)
        if t < 2:
            return False
        masks = []
        union = 0
        for x_set in sets:
            if not x_set or len(set(x_set)) != len(x_set):
                return False
            if any(not 0 <= v < graph.n for v in x_set):
                return False
            mask = mask_of(x_set)
            if union & mask:
                return False
            union |= mask
            masks.append(mask)

        for i, mask in enumerate(masks):
            others = union & ~mask
            for v in iter_bits(mask):
                if mode is QuasiMode.INDEPENDENT and graph.rows[v] & others:
                    return False
                if mode is QuasiMode.COMPLETE and graph.rows[v] & others != others:
                    return False

        n = graph.n
        for mask in masks:
            size = mask.bit_count()
            if beta == HALF:
                if t * t * size < alpha_sq * n:
                    return False
            elif t < math.sqrt(alpha_sq) * (n / size) ** float(beta):
                return False
        return True

    def verify_qeh_result(self, graph: OrderedGraph, result: QehResult, consts: QehConstants) -> bool:
        if isinstance(result, PathResult):
            return len(result.vertices) == consts.k and is_induced_monotone_path(graph, result.vertices)
        if isinstance(result, FamilyResult):
            return self.verify_quasi_family(graph, result.sets, consts.alpha_sq)
        return False

    # Décomposition

    def _breach(self, message: str) -> None:
        self.logger.error(message)
        raise InvariantBreachError(message)

    def qeh_decompose(self, graph: OrderedGraph, consts: QehConstants, seed: int = 0) -> QehResult:
        n = graph.n
        if n < 2:
            raise PreconditionError(f"graph must have at least 2 vertices, got {n}")
        if graph.max_degree() > consts.eps * n:
            raise PreconditionError(
                f"max degree {graph.max_degree()} exceeds eps*n = {float(consts.eps * n):.4g}"
            )
        streams = RandomStreams(seed)
        trace: List[StepRecord] = []

        # Pas initial : A = premiers ⌈n/2⌉ sommets, H = fermeture restreinte à A×B
        closure = self.closure_service.transitive_closure(graph)
        half = (n + 1) // 2
        a_labels = list(range(half))
        b_labels = list(range(half, n))
        rows = {a: closure.rows[a] >> half for a in a_labels}
        outcome = self._embed(a_labels, b_labels, rows, n, consts, streams.child_seed("qeh-step", 1))
        trace.append(StepRecord(0, 0, n, n, outcome.kind.value, outcome.route.value))

        if not isinstance(outcome, DenseVertex):
            return self._family(graph, outcome, n, consts, trace)

        state = PathState(path=[outcome.vertex], surviving=graph.full_mask)
        self._check_path_state(graph, state, consts)

        while state.s < consts.k:
            x_s = state.path[-1]
            alive = state.alive
            x_mask = graph.forward_mask(x_s) & alive
            y_mask = self.closure_service.good_reach_mask(graph, x_s, within=alive)
            z_mask = y_mask & ~x_mask
            z_size = z_mask.bit_count()
            if self.check_invariants and 2 * z_size < consts.c(state.s) * n:
                self._breach(f"|Z|={z_size} below c_s*n/2 at step s={state.s}")

            z_list = members(z_mask)
            cut = (len(z_list) + 1) // 2
            a_labels, b_labels = z_list[:cut], z_list[cut:]
            table = self.closure_service.good_reach_table(graph, members(x_mask), within=alive)
            assigned = self._assign(a_labels, table)
            b_mask = mask_of(b_labels)
            b_pos = {b: j for j, b in enumerate(b_labels)}
            rows = {}
            for v in a_labels:
                row = 0
                for y in iter_bits(table[assigned[v]] & b_mask):
                    row |= 1 << b_pos[y]
                rows[v] = row

            outcome = self._embed(a_labels, b_labels, rows, n, consts,
                                  streams.child_seed("qeh-step", state.s + 1))
            trace.append(StepRecord(state.s, x_mask.bit_count(), y_mask.bit_count(), z_size,
                                    outcome.kind.value, outcome.route.value))
            self.logger.debug(f"Step s={state.s}: |X|={x_mask.bit_count()} |Y|={y_mask.bit_count()} "
                              f"|Z|={z_size} -> {outcome.kind.value}")

            if not isinstance(outcome, DenseVertex):
                return self._family(graph, outcome, n, consts, trace)

            x_next = assigned[outcome.vertex]
            if not x_mask >> x_next & 1:
                self._breach(f"assigned vertex {x_next} lies outside the forward neighbourhood of {x_s}")
            state.surviving &= ~graph.rows[x_s]
            state.path.append(x_next)
            self._check_path_state(graph, state, consts)

        result = PathResult(tuple(state.path), tuple(trace))
        if not self.verify_qeh_result(graph, result, consts):
            self._breach(f"path {result.vertices} is not an induced monotone path of size {consts.k}")
        return result

    def _assign(self, a_labels: List[int], table: Dict[int, int]) -> Dict[int, int]:
        """À chaque v ∈ A, le plus grand x ∈ X qui l'atteint"""
        order = sorted(table, reverse=True)
        assigned = {}
        for v in a_labels:
            for x in order:
                if table[x] >> v & 1:
                    assigned[v] = x
                    break
            else:
                self._breach(f"vertex {v} of Z is not reachable from the forward neighbourhood")
        return assigned

    def _embed(self, a_labels: List[int], b_labels: List[int], rows: Dict[int, int], n: int,
               consts: QehConstants, seed: int) -> EmbeddingOutcome:
        """Complète les classes par des sommets isolés d'étiquette ≥ n puis décompose"""
        size = max(len(a_labels), len(b_labels), 2)
        next_label = n
        a_full, b_full = list(a_labels), list(b_labels)
        while len(a_full) < size:
            a_full.append(next_label)
            next_label += 1
        while len(b_full) < size:
            b_full.append(next_label)
            next_label += 1
        a_rows = tuple(rows.get(v, 0) for v in a_full)
        h = BipartiteOrderedGraph(tuple(a_full), tuple(b_full), a_rows)
        return self.embedding_service.embed_decompose(h, consts.embedding, seed)

    def _family(self, graph: OrderedGraph, outcome: EmbeddingOutcome, n: int,
                consts: QehConstants, trace: List[StepRecord]) -> FamilyResult:
        if isinstance(outcome, SeparatedFamilies):
            raw = outcome.x_sets
        elif isinstance(outcome, SparsePair):
            raw = (outcome.a_side, outcome.b_side)
        else:
            raise InvariantBreachError(f"unexpected outcome {outcome!r}")
        sets = tuple(tuple(v for v in x_set if v < n) for x_set in raw)
        result = FamilyResult(sets, tuple(trace))
        if not self.verify_qeh_result(graph, result, consts):
            self._breach(f"family from outcome '{outcome.kind.value}' fails the quasi-EH check")
        return result

    def _check_path_state(self, graph: OrderedGraph, state: PathState, consts: QehConstants) -> None:
        if not self.check_invariants:
            return
        if not is_induced_monotone_path(graph, state.path):
            self._breach(f"path {state.path} is not induced monotone")
        forward = self.closure_service.good_reach_mask(graph, state.path[-1], within=state.alive)
        if forward.bit_count() < consts.c(state.s) * graph.n:
            self._breach(
                f"forward closure degree {forward.bit_count()} of x_{state.s} below c_s*n"
            )
