# tests/test_homogeneous.py
import warnings
from fractions import Fraction

import numpy as np
import pytest

from orl.domain.construction import BlowupParams
from orl.domain.embedding import EmbeddingConstants
from orl.domain.errors import PreconditionError
from orl.domain.homogeneous import GraphSide, HomogeneousKind, TrimResult
from orl.domain.ordered_graph import OrderedGraph
from orl.domain.qeh import QehConstants
from orl.infrastructure.services.homogeneous_service import HomogeneousService
from tests.conftest import cycle_graph, disjoint_union, path_graph

CONSTS = QehConstants(3, EmbeddingConstants.lab())


def star(n: int) -> OrderedGraph:
    return OrderedGraph.from_edges(n, [(0, v) for v in range(1, n)])


def random_graph(n: int, p: float, seed: int) -> OrderedGraph:
    upper = np.triu(np.random.default_rng(seed).random((n, n)) < p, k=1)
    return OrderedGraph.from_edges(n, [(int(u), int(v)) for u, v in zip(*np.nonzero(upper))])


def test_is_homogeneous():
    graph = path_graph(4)
    assert HomogeneousService.is_homogeneous(graph, (0, 2), HomogeneousKind.INDEPENDENT)
    assert HomogeneousService.is_homogeneous(graph, (1, 2), HomogeneousKind.CLIQUE)
    assert not HomogeneousService.is_homogeneous(graph, (0, 1, 2), HomogeneousKind.CLIQUE)
    assert not HomogeneousService.is_homogeneous(graph, (0, 0), HomogeneousKind.INDEPENDENT)
    assert HomogeneousService.is_homogeneous(graph, (), HomogeneousKind.CLIQUE)


class TestTrimming:

    def test_star_loses_its_center(self, homogeneous_service):
        kept = homogeneous_service.trim_high_degree(star(10), range(10), Fraction(1, 5))
        assert kept == tuple(range(1, 10))

    def test_trim_accepts_decimal_eps(self, homogeneous_service):
        assert homogeneous_service.trim_high_degree(star(10), range(10), "0.2") == tuple(range(1, 10))

    def test_too_many_edges(self, homogeneous_service):
        with pytest.raises(PreconditionError):
            homogeneous_service.trim_high_degree(OrderedGraph.complete(5), range(5), "0.1")

    def test_peel_star(self, homogeneous_service):
        result = homogeneous_service.peel_to_degree_bound(star(10), range(10), "1/2")
        assert result.vertices == tuple(range(1, 10))
        assert result.side is GraphSide.GRAPH

    def test_peel_on_complement_side(self, homogeneous_service):
        result = homogeneous_service.peel_to_degree_bound(OrderedGraph.complete(6), range(6), "1/2",
                                                          side=GraphSide.COMPLEMENT)
        assert result.vertices == tuple(range(6))


class TestLowDegreeSide:

    def test_edgeless_is_its_own_low_side(self, homogeneous_service):
        result = homogeneous_service.find_low_degree_side(OrderedGraph.empty(10), "1/2")
        assert result.side is GraphSide.GRAPH
        assert result.vertices == tuple(range(10))

    def test_complete_uses_complement(self, homogeneous_service):
        result = homogeneous_service.find_low_degree_side(OrderedGraph.complete(10), "1/2")
        assert result.side is GraphSide.COMPLEMENT
        assert result.vertices == tuple(range(10))

    @pytest.mark.parametrize("seed", range(5))
    def test_result_meets_degree_bound(self, homogeneous_service, seed):
        graph = random_graph(40, 0.5, seed)
        eps = Fraction(1, 8)
        result = homogeneous_service.find_low_degree_side(graph, eps)
        working, _ = result.side.apply(graph).induced_subgraph(result.vertices)
        assert result.vertices
        assert working.max_degree() <= eps * working.n

    def test_half_dense_graph_returns_both_sides(self, homogeneous_service):
        sides = homogeneous_service.find_low_degree_sides(path_graph(4), 1)
        assert {trim.side for trim in sides} == {GraphSide.GRAPH, GraphSide.COMPLEMENT}
        assert all(trim.vertices == (0, 1, 2, 3) for trim in sides)
        assert homogeneous_service.find_low_degree_side(path_graph(4), 1) == sides[0]

    def test_empty_graph_rejected(self, homogeneous_service):
        with pytest.raises(PreconditionError):
            homogeneous_service.find_low_degree_side(OrderedGraph.empty(0), "1/2")


class TestExtraction:

    def test_edgeless_gives_everything(self, homogeneous_service):
        result = homogeneous_service.extract_homogeneous(OrderedGraph.empty(20), CONSTS)
        assert result.kind is HomogeneousKind.INDEPENDENT
        assert result.vertices == tuple(range(20))

    def test_complete_gives_everything(self, homogeneous_service):
        result = homogeneous_service.extract_homogeneous(OrderedGraph.complete(20), CONSTS)
        assert result.kind is HomogeneousKind.CLIQUE
        assert result.size == 20

    def test_small_graph_is_solved_exactly(self, homogeneous_service, oracle_service):
        graph = cycle_graph(5)
        result = homogeneous_service.extract_homogeneous(graph, CONSTS)
        size, kind, _ = oracle_service.brute_max_homogeneous(graph)
        assert result.size == size == 2
        assert result.kind is kind is HomogeneousKind.CLIQUE

    def test_disjoint_cliques(self, homogeneous_service):
        graph = disjoint_union(*(OrderedGraph.complete(5) for _ in range(6)))
        result = homogeneous_service.extract_homogeneous(graph, CONSTS, base_size=8)
        assert result.size >= 5
        assert HomogeneousService.is_homogeneous(graph, result.vertices, result.kind)

    @pytest.mark.parametrize("seed", range(4))
    def test_random_graph_postconditions(self, homogeneous_service, oracle_service, seed):
        graph = random_graph(24, 0.5, seed)
        result = homogeneous_service.extract_homogeneous(graph, CONSTS, seed=seed)
        optimum, _, _ = oracle_service.brute_max_homogeneous(graph)
        assert HomogeneousService.is_homogeneous(graph, result.vertices, result.kind)
        assert 2 <= result.size <= optimum

    def test_seed_reproducible(self, homogeneous_service):
        graph = random_graph(30, 0.3, 11)
        first = homogeneous_service.extract_homogeneous(graph, CONSTS, seed=4)
        second = homogeneous_service.extract_homogeneous(graph, CONSTS, seed=4)
        assert first == second
        assert first.diagnostics == second.diagnostics

    def test_every_qualifying_side_is_explored(self, qeh_service, monkeypatch):
        service = HomogeneousService(qeh_service)
        graph = OrderedGraph.empty(20)
        both = (TrimResult(tuple(range(20)), GraphSide.GRAPH), TrimResult(tuple(range(20)), GraphSide.COMPLEMENT))
        find_sides = service.find_low_degree_sides
        monkeypatch.setattr(service, "find_low_degree_sides",
                            lambda g, eps: both if g.n == 20 else find_sides(g, eps))
        explored = []
        decompose = qeh_service.qeh_decompose

        def spy(working, consts, seed=0):
            explored.append(working.edge_count)
            return decompose(working, consts, seed)

        monkeypatch.setattr(qeh_service, "qeh_decompose", spy)
        result = service.extract_homogeneous(graph, CONSTS, base_size=8)
        assert explored[0] == 0
        assert 190 in explored
        assert result.kind is HomogeneousKind.INDEPENDENT
        assert result.size == 20
        assert any("complement side" in note for note in result.diagnostics)

    def test_path_size_comes_from_constants(self, homogeneous_service):
        graph = random_graph(30, 0.3, 2)
        first = homogeneous_service.extract_homogeneous(graph, QehConstants(3, EmbeddingConstants.lab()), seed=1)
        second = homogeneous_service.extract_homogeneous(graph, QehConstants(4, EmbeddingConstants.lab()), seed=1)
        assert HomogeneousService.is_homogeneous(graph, first.vertices, first.kind)
        assert HomogeneousService.is_homogeneous(graph, second.vertices, second.kind)
        assert all("size 4" not in note for note in first.diagnostics)


def random_cograph(n: int, rng: np.random.Generator) -> OrderedGraph:
    """Cographe aléatoire (unions et joints), sommets renumérotés au hasard"""

    def build(vertices):
        if len(vertices) == 1:
            return []
        cut = int(rng.integers(1, len(vertices)))
        left, right = vertices[:cut], vertices[cut:]
        edges = build(left) + build(right)
        if rng.random() < 0.5:
            edges += [(u, v) for u in left for v in right]
        return edges

    labels = [int(v) for v in rng.permutation(n)]
    return OrderedGraph.from_edges(n, [tuple(sorted(pair)) for pair in build(labels)])


def family_instances(construction_service, pattern_service, count: int):
    """(graphe, k) avec graphe ∈ 𝒫_k : constructions, petits graphes aléatoires, puis cographes"""
    instances = []
    candidates = []
    for k, m in ((2, 6), (2, 10), (2, 20), (3, 8), (3, 12), (4, 10), (5, 12)):
        for seed in range(4):
            candidates.append(construction_service.build_counterexample(BlowupParams.explicit(k, 1, m), seed)[0])
    candidates += [random_graph(n, p, seed) for seed in range(60)
                   for n, p in ((10, 0.3), (12, 0.5), (14, 0.7))]
    for graph in candidates:
        k = next((k for k in (4, 5, 6) if pattern_service.is_family_member(graph, k)), None)
        if k is not None:
            instances.append((graph, k))
    rng = np.random.default_rng(0)
    while len(instances) < count:
        graph = random_cograph(int(rng.integers(10, 61)), rng)
        assert pattern_service.is_family_member(graph, 4)
        instances.append((graph, 4))
    return instances[:count]


@pytest.mark.slow
def test_family_instances_give_exact_homogeneous_sets(homogeneous_service, construction_service,
                                                      pattern_service, oracle_service):
    low_ratios = []
    instances = family_instances(construction_service, pattern_service, 200)
    assert len(instances) == 200
    for seed, (graph, k) in enumerate(instances):
        result = homogeneous_service.extract_homogeneous(graph, QehConstants(k, EmbeddingConstants.lab()), seed)
        assert HomogeneousService.is_homogeneous(graph, result.vertices, result.kind), (graph.n, k, seed)
        if graph.n <= 24:
            optimum, _, _ = oracle_service.brute_max_homogeneous(graph)
            assert result.size <= optimum
            if 2 * result.size < optimum:
                low_ratios.append((graph.n, result.size, optimum))
    if low_ratios:
        warnings.warn(f"homogeneous size below half the optimum on {len(low_ratios)} graphs: {low_ratios[:5]}")
