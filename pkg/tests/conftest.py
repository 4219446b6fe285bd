# tests/conftest.py
import itertools

import pytest
from dependency_injector import providers
from hypothesis import strategies as st

from orl.config.container import Container
from orl.config.settings import Settings
from orl.domain.ordered_graph import OrderedGraph


@pytest.fixture
def container():
    c = Container()
    c.settings.override(providers.Object(Settings()))
    yield c
    c.settings.reset_override()


@pytest.fixture
def closure_service(container):
    return container.closure_service()


@pytest.fixture
def pattern_service(container):
    return container.pattern_service()


@pytest.fixture
def oracle_service(container):
    return container.oracle_service()


@pytest.fixture
def embedding_service(container):
    return container.embedding_service()


@pytest.fixture
def qeh_service(container):
    return container.qeh_service()


@pytest.fixture
def homogeneous_service(container):
    return container.homogeneous_service()


@pytest.fixture
def construction_service(container):
    return container.construction_service()


@pytest.fixture
def certifiers(container):
    return container.certifiers()


# Fabriques de graphes

def path_graph(n: int) -> OrderedGraph:
    return OrderedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> OrderedGraph:
    return OrderedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def perfect_matching(n: int) -> OrderedGraph:
    """Appariement i ↔ n + i entre les deux moitiés de {0..2n-1}"""
    return OrderedGraph.from_edges(2 * n, [(i, n + i) for i in range(n)])


def disjoint_union(*graphs: OrderedGraph) -> OrderedGraph:
    edges, offset = [], 0
    for graph in graphs:
        edges.extend((u + offset, v + offset) for u, v in graph.edges())
        offset += graph.n
    return OrderedGraph.from_edges(offset, edges)


def all_graphs(n: int):
    """Tous les graphes ordonnés sur n sommets"""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield OrderedGraph.from_edges(n, [pair for i, pair in enumerate(pairs) if bits >> i & 1])


@st.composite
def ordered_graphs(draw, min_n: int = 0, max_n: int = 10):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return OrderedGraph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])
