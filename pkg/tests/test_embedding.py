# tests/test_embedding.py
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orl.domain.embedding import (
    ConstantProfile, DenseVertex, EmbeddingConstants, EmbeddingTrace, OutcomeKind, SeparatedFamilies,
    SparsePair,
)
from orl.domain.errors import ParameterError, PreconditionError
from orl.domain.ordered_graph import BipartiteOrderedGraph
from orl.infrastructure.services.embedding_service import EmbeddingService


def bipartite(n: int, pairs) -> BipartiteOrderedGraph:
    return BipartiteOrderedGraph.from_pairs(range(n), range(n, 2 * n), pairs)


def matching(n: int) -> BipartiteOrderedGraph:
    return bipartite(n, [(i, n + i) for i in range(n)])


def test_paper_constants():
    constants = EmbeddingConstants.paper()
    assert constants.eps1 == Fraction(1, 2000)
    assert constants.alpha == Fraction(1, 100)
    assert constants.eps == Fraction(1, 500)
    assert constants.enforces_sum_bound


def test_lab_constants_accept_decimal_strings():
    constants = EmbeddingConstants.for_profile("lab", eps1="0.2")
    assert constants.eps1 == Fraction(1, 5)
    assert constants.alpha1 == Fraction(1, 4)
    assert constants.profile is ConstantProfile.LAB


@pytest.mark.parametrize("eps1", [0, 1, "-1/3", "abc"])
def test_constants_reject_values_outside_unit_interval(eps1):
    with pytest.raises(ParameterError):
        EmbeddingConstants.lab(eps1=eps1)


def test_paper_profile_rejects_overrides():
    with pytest.raises(ParameterError):
        EmbeddingConstants.for_profile("paper", eps1="1/4")


def test_complete_bipartite_gives_dense_vertex(embedding_service):
    n = 100
    graph = bipartite(n, [(a, n + b) for a in range(n) for b in range(n)])
    constants = EmbeddingConstants.paper()
    outcome = embedding_service.embed_decompose(graph, constants)
    assert isinstance(outcome, DenseVertex)
    assert outcome.degree == n
    assert embedding_service.verify_outcome(graph, outcome, constants)


@pytest.mark.parametrize("constants", [EmbeddingConstants.paper(), EmbeddingConstants.lab()])
def test_edgeless_gives_sparse_pair_of_halves(embedding_service, constants):
    graph = bipartite(100, [])
    outcome = embedding_service.embed_decompose(graph, constants)
    assert isinstance(outcome, SparsePair)
    assert len(outcome.a_side) == 50 and len(outcome.b_side) == 50
    assert embedding_service.verify_outcome(graph, outcome, constants)


def test_perfect_matching_gives_separated_families(embedding_service):
    graph = matching(4096)
    constants = EmbeddingConstants.paper()
    outcome, trace = embedding_service.decompose_with_trace(graph, constants, seed=3)
    assert isinstance(outcome, SeparatedFamilies)
    assert outcome.t >= 2
    assert embedding_service.verify_outcome(graph, outcome, constants)
    assert trace.trimmed_n == 2048
    assert trace.case1_attempts >= 1
    assert trace.closing_threshold == trace.target_threshold
    assert not trace.closed_below_target


def test_perfect_matching_under_lab_profile(embedding_service):
    graph = matching(512)
    constants = EmbeddingConstants.lab()
    outcome = embedding_service.embed_decompose(graph, constants, seed=1)
    assert outcome.kind is not OutcomeKind.DENSE
    assert embedding_service.verify_outcome(graph, outcome, constants)


def test_same_seed_same_outcome(embedding_service):
    graph = matching(512)
    constants = EmbeddingConstants.lab()
    first = embedding_service.embed_decompose(graph, constants, seed=7)
    second = embedding_service.embed_decompose(graph, constants, seed=7)
    assert first == second


def test_unequal_classes_are_rejected(embedding_service):
    graph = BipartiteOrderedGraph.from_pairs(range(3), range(3, 5), [])
    with pytest.raises(PreconditionError):
        embedding_service.embed_decompose(graph, EmbeddingConstants.lab())


def test_single_vertex_classes_are_rejected(embedding_service):
    with pytest.raises(PreconditionError):
        embedding_service.embed_decompose(bipartite(1, []), EmbeddingConstants.lab())


class TestVerifyOutcome:

    def test_separated_claim_on_edgeless_graph_fails(self, embedding_service):
        graph = bipartite(8, [])
        claim = SeparatedFamilies(((0,), (1,)), ((8,), (9,)))
        assert not embedding_service.verify_outcome(graph, claim, EmbeddingConstants.lab())

    def test_separated_claim_on_matching_holds(self, embedding_service):
        graph = matching(8)
        claim = SeparatedFamilies(((0, 1), (2, 3)), ((8, 9), (10, 11)))
        assert embedding_service.verify_outcome(graph, claim, EmbeddingConstants.lab())

    def test_crossing_neighborhoods_fail(self, embedding_service):
        graph = bipartite(8, [(0, 8), (1, 9), (0, 9)])
        claim = SeparatedFamilies(((0,), (1,)), ((8,), (9,)))
        assert not embedding_service.verify_outcome(graph, claim, EmbeddingConstants.lab())

    def test_sparse_pair_with_edge_fails(self, embedding_service):
        graph = bipartite(8, [(0, 8)])
        assert not embedding_service.verify_outcome(graph, SparsePair((0, 1), (8, 9)),
                                                    EmbeddingConstants.lab())
        assert embedding_service.verify_outcome(graph, SparsePair((1, 2), (8, 9)),
                                                EmbeddingConstants.lab())

    def test_unknown_vertices_fail(self, embedding_service):
        graph = bipartite(4, [])
        assert not embedding_service.verify_outcome(graph, DenseVertex(17, 4), EmbeddingConstants.lab())
        assert not embedding_service.verify_outcome(graph, SparsePair((0, 5), (4,)),
                                                    EmbeddingConstants.lab())

    def test_dense_vertex_below_threshold_fails(self, embedding_service):
        graph = bipartite(16, [(0, 16)])
        assert not embedding_service.verify_outcome(graph, DenseVertex(0, 1), EmbeddingConstants.lab())


@st.composite
def bipartite_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=40))
    density = draw(st.sampled_from([0.0, 0.02, 0.05, 0.1, 0.3]))
    flips = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32))).random((n, n))
    pairs = [(a, n + b) for a in range(n) for b in range(n) if flips[a, b] < density]
    return bipartite(n, pairs)


@settings(max_examples=60, deadline=None)
@given(bipartite_graphs(), st.integers(min_value=0, max_value=2 ** 32))
def test_every_outcome_verifies(graph, seed):
    service = EmbeddingService()
    constants = EmbeddingConstants.lab()
    outcome = service.embed_decompose(graph, constants, seed)
    assert service.verify_outcome(graph, outcome, constants)


def test_trace_flags_parts_closed_below_target():
    trace = EmbeddingTrace(trimmed_n=8, j0=1, main_steps=1, sub_rounds=1, case1_attempts=1,
                           derandomized=False, closing_threshold=Fraction(2), target_threshold=Fraction(9, 2))
    assert trace.closed_below_target
    assert trace.to_dict()["target_threshold"] == "9/2"


def random_bipartite(n: int, density: float, seed: int) -> BipartiteOrderedGraph:
    flips = np.random.default_rng(seed).random((n, n)) < density
    rows = tuple(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little") for row in flips)
    return BipartiteOrderedGraph(tuple(range(n)), tuple(range(n, 2 * n)), rows)


def shuffled_matching(n: int, seed: int) -> BipartiteOrderedGraph:
    target = np.random.default_rng(seed).permutation(n)
    return bipartite(n, [(i, n + int(target[i])) for i in range(n)])


@pytest.mark.slow
def test_outcomes_verify_on_random_grid_and_paper_constants(embedding_service):
    kinds = set()
    lab_constants = EmbeddingConstants.lab()
    for n in (64, 256, 1024):
        for density in (0.001, 0.01, 0.1, 0.5):
            for seed in range(84):
                graph = random_bipartite(n, density, seed)
                outcome = embedding_service.embed_decompose(graph, lab_constants, seed)
                assert embedding_service.verify_outcome(graph, outcome, lab_constants), (n, density, seed)
                kinds.add(outcome.kind)

    paper_constants = EmbeddingConstants.paper()
    instances = [(matching(4096), 3)] + [(shuffled_matching(4096, seed), seed) for seed in range(49)]
    for graph, seed in instances:
        outcome = embedding_service.embed_decompose(graph, paper_constants, seed)
        assert embedding_service.verify_outcome(graph, outcome, paper_constants), seed
        kinds.add(outcome.kind)

    assert kinds == set(OutcomeKind)
