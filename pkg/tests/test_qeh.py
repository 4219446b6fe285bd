# tests/test_qeh.py
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orl.domain.embedding import EmbeddingConstants
from orl.domain.errors import ParameterError, PreconditionError
from orl.domain.ordered_graph import OrderedGraph
from orl.domain.qeh import FamilyResult, PathResult, QehConstants, QuasiMode
from orl.infrastructure.services.closure_service import ClosureService
from orl.infrastructure.services.embedding_service import EmbeddingService
from orl.infrastructure.services.qeh_service import QehService, is_induced_monotone_path
from tests.conftest import path_graph


def lab(k: int, eps1="1/2") -> QehConstants:
    return QehConstants(k, EmbeddingConstants.lab(eps1=eps1))


class TestConstants:

    def test_chain_is_strictly_decreasing(self):
        consts = lab(3)
        assert consts.chain == (Fraction(1, 4), Fraction(1, 32), Fraction(1, 256))
        assert consts.eps == Fraction(1, 512)

    def test_alpha_is_kept_squared(self):
        consts = lab(1)
        assert consts.alpha_sq == Fraction(1, 16) * Fraction(1, 4) / 4
        assert math.isclose(consts.alpha, math.sqrt(1 / 256))

    def test_invalid_k(self):
        with pytest.raises(ParameterError):
            lab(0)

    @pytest.mark.parametrize("alpha, beta, expected", [
        (1, Fraction(1, 2), 0.5),
        (2, Fraction(1, 2), 0.5),
        (Fraction(1, 2), Fraction(1, 2), 0.25),
    ])
    def test_normalize(self, alpha, beta, expected):
        assert math.isclose(QehService.quasi_constants_normalize(alpha, beta), expected)

    @pytest.mark.parametrize("alpha, beta", [(0, 1), (1, 0), (-1, 1)])
    def test_normalize_rejects_nonpositive(self, alpha, beta):
        with pytest.raises(ParameterError):
            QehService.quasi_constants_normalize(alpha, beta)


class TestInducedMonotonePath:

    def test_path(self):
        assert is_induced_monotone_path(path_graph(3), (0, 1, 2))

    def test_chord_breaks_inducedness(self):
        graph = OrderedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert not is_induced_monotone_path(graph, (0, 1, 2))

    def test_order_matters(self):
        assert not is_induced_monotone_path(path_graph(3), (1, 0))
        assert not is_induced_monotone_path(path_graph(3), (0, 5))


class TestVerifyQuasiFamily:

    def test_crossing_edge_fails(self, qeh_service):
        graph = OrderedGraph.from_edges(4, [(1, 2)])
        assert not qeh_service.verify_quasi_family(graph, [(0, 1), (2, 3)], Fraction(1, 100))
        assert qeh_service.verify_quasi_family(graph, [(0, 3), (1, 2)], Fraction(1, 100))

    def test_needs_two_disjoint_nonempty_sets(self, qeh_service):
        graph = OrderedGraph.empty(4)
        assert not qeh_service.verify_quasi_family(graph, [(0, 1, 2, 3)], Fraction(1, 100))
        assert not qeh_service.verify_quasi_family(graph, [(0, 1), (1, 2)], Fraction(1, 100))
        assert not qeh_service.verify_quasi_family(graph, [(0, 1), ()], Fraction(1, 100))

    def test_size_inequality(self, qeh_service):
        graph = OrderedGraph.empty(100)
        assert not qeh_service.verify_quasi_family(graph, [(0,), (1,)], 1)
        assert qeh_service.verify_quasi_family(graph, [(0,), (1,)], Fraction(1, 100))

    def test_complete_mode(self, qeh_service):
        graph = OrderedGraph.complete(4)
        sets = [(0, 1), (2, 3)]
        assert qeh_service.verify_quasi_family(graph, sets, Fraction(1, 100), mode=QuasiMode.COMPLETE)
        assert not qeh_service.verify_quasi_family(graph, sets, Fraction(1, 100))


class TestDecompose:

    def test_edgeless_gives_family(self, qeh_service):
        graph = OrderedGraph.empty(64)
        consts = QehConstants(3, EmbeddingConstants.lab())
        result = qeh_service.qeh_decompose(graph, consts)
        assert isinstance(result, FamilyResult)
        assert result.t == 2
        assert not set(result.sets[0]) & set(result.sets[1])
        assert qeh_service.verify_qeh_result(graph, result, consts)
        assert len(result.trace) == 1

    def test_long_path_gives_monotone_path(self, qeh_service):
        graph = path_graph(128)
        consts = lab(2)
        result = qeh_service.qeh_decompose(graph, consts)
        assert result == PathResult((0, 1))
        assert qeh_service.verify_qeh_result(graph, result, consts)
        assert [record.variant for record in result.trace] == ["dense", "dense"]

    def test_single_vertex_path(self, qeh_service):
        result = qeh_service.qeh_decompose(path_graph(32), lab(1))
        assert isinstance(result, PathResult)
        assert len(result.vertices) == 1

    def test_dense_graph_violates_degree_precondition(self, qeh_service):
        with pytest.raises(PreconditionError):
            qeh_service.qeh_decompose(OrderedGraph.complete(10), lab(2))

    def test_tiny_graph_rejected(self, qeh_service):
        with pytest.raises(PreconditionError):
            qeh_service.qeh_decompose(OrderedGraph.empty(1), lab(1))

    def test_reproducible(self, qeh_service):
        graph = path_graph(128)
        consts = lab(2)
        assert qeh_service.qeh_decompose(graph, consts, seed=5) == \
            qeh_service.qeh_decompose(graph, consts, seed=5)

    def test_wrong_path_length_fails_verification(self, qeh_service):
        assert not qeh_service.verify_qeh_result(path_graph(5), PathResult((0, 1)), lab(3))




def capped_random_graph(n: int, density: float, eps: Fraction, rng: np.random.Generator) -> OrderedGraph:
    """Graphe aléatoire élagué jusqu'à Δ ≤ ε·n"""
    cap = math.floor(eps * n)
    degree = [0] * n
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density and degree[u] < cap and degree[v] < cap:
                edges.append((u, v))
                degree[u] += 1
                degree[v] += 1
    return OrderedGraph.from_edges(n, edges)


@st.composite
def low_degree_graphs(draw, eps: Fraction):
    n = 2 * draw(st.integers(min_value=4, max_value=30))
    density = draw(st.sampled_from([0.05, 0.1, 0.3]))
    rng = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32)))
    return capped_random_graph(n, density, eps, rng)


CONSTS_K1 = QehConstants(1, EmbeddingConstants.lab(eps1="3/4"))


@settings(max_examples=50, deadline=None)
@given(low_degree_graphs(CONSTS_K1.eps), st.integers(min_value=0, max_value=1000))
def test_every_result_verifies(graph, seed):
    service = QehService(ClosureService(), EmbeddingService())
    result = service.qeh_decompose(graph, CONSTS_K1, seed)
    assert service.verify_qeh_result(graph, result, CONSTS_K1)


@pytest.mark.slow
@pytest.mark.parametrize("consts, sizes", [
    (CONSTS_K1, (8, 16, 24, 32, 40, 48, 56, 60)),
    (lab(2), (128, 160, 192)),
])
def test_seeded_instances_verify(qeh_service, consts, sizes):
    for seed in range(250):
        rng = np.random.default_rng(seed)
        n = sizes[seed % len(sizes)]
        density = (0.02, 0.05, 0.1, 0.3)[seed // len(sizes) % 4]
        graph = capped_random_graph(n, density, consts.eps, rng)
        assert graph.max_degree() <= consts.eps * n
        result = qeh_service.qeh_decompose(graph, consts, seed)
        assert qeh_service.verify_qeh_result(graph, result, consts), (n, density, seed)
