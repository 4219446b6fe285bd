# tests/test_closure.py
import pytest
from hypothesis import given

from orl.domain.ordered_graph import ClosureGraph, OrderedGraph, mask_of
from orl.infrastructure.services.closure_service import ClosureService
from tests.conftest import all_graphs, ordered_graphs, path_graph


def test_closure_adds_endpoints_of_monotone_paths(closure_service):
    closure = closure_service.transitive_closure(path_graph(3))
    assert isinstance(closure, ClosureGraph)
    assert list(closure.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_closure_of_edgeless_graph(closure_service):
    assert closure_service.transitive_closure(OrderedGraph.empty(5)).edge_count == 0


def test_non_monotone_paths_do_not_close(closure_service):
    # 0-2-1 n'est pas croissant
    graph = OrderedGraph.from_edges(3, [(0, 2), (1, 2)])
    assert list(closure_service.transitive_closure(graph).edges()) == [(0, 2), (1, 2)]


def test_forward_closure_neighborhood(closure_service):
    graph = OrderedGraph.from_edges(5, [(0, 2), (2, 4), (1, 3)])
    assert closure_service.forward_closure_neighborhood(graph, 0) == (2, 4)
    assert closure_service.forward_closure_neighborhood(graph, 1) == (3,)


def test_good_reachable_avoids_forbidden_vertices(closure_service):
    graph = OrderedGraph.from_edges(5, [(0, 1), (1, 4), (0, 2), (2, 3)])
    assert closure_service.good_reachable(graph, 0) == (1, 2, 3, 4)
    assert closure_service.good_reachable(graph, 0, forbidden=[1]) == (2, 3)
    assert closure_service.good_reachable(graph, 0, within=mask_of([0, 1, 4])) == (1, 4)


def test_good_reach_table_skips_other_sources(closure_service):
    graph = OrderedGraph.from_edges(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    table = closure_service.good_reach_table(graph, [1, 3])
    assert table[1] == mask_of([2])
    assert table[3] == mask_of([4])


@given(ordered_graphs(max_n=10))
def test_closure_contains_graph_and_is_ordered_transitive(graph):
    closure = ClosureService().transitive_closure(graph)
    for u, v in graph.edges():
        assert closure.adjacent(u, v)
    for x in range(graph.n):
        for y in closure.forward_neighborhood(x):
            for z in closure.forward_neighborhood(y):
                assert closure.adjacent(x, z)


def test_closure_matches_enumeration_up_to_five_vertices(closure_service, oracle_service):
    for n in range(6):
        for graph in all_graphs(n):
            assert closure_service.transitive_closure(graph).rows == oracle_service.brute_closure(graph).rows


@pytest.mark.slow
def test_closure_matches_enumeration_up_to_seven_vertices(closure_service, oracle_service):
    for graph in all_graphs(7):
        assert closure_service.transitive_closure(graph).rows == oracle_service.brute_closure(graph).rows
