# tests/test_certifiers.py
from fractions import Fraction

import numpy as np
import pytest

from orl.config.settings import OracleBudget
from orl.domain.construction import CertificationMode
from orl.domain.errors import BudgetExceededError, PreconditionError
from orl.domain.ordered_graph import NeighborhoodMode, OrderedGraph
from orl.infrastructure.certifiers import ExactCertifier, SampledCertifier, SpectralCertifier, build_registry
from orl.infrastructure.certifiers.exact import popcount
from tests.conftest import cycle_graph, disjoint_union, path_graph

REGULAR = {
    "C6": cycle_graph(6),
    "C9": cycle_graph(9),
    "K4": OrderedGraph.complete(4),
    "2K4": disjoint_union(OrderedGraph.complete(4), OrderedGraph.complete(4)),
    "K33": OrderedGraph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)]),
}


def test_popcount():
    values = np.array([0, 1, 255, 2 ** 40 - 1, 2 ** 61], dtype=np.int64)
    assert popcount(values).tolist() == [0, 1, 8, 40, 1]


def test_registry_has_every_mode():
    registry = build_registry()
    assert set(registry) == set(CertificationMode)
    assert all(registry[mode].mode is mode for mode in CertificationMode)


class TestExact:

    @pytest.mark.parametrize("name, expected", [
        ("C6", Fraction(2, 3)),
        ("K4", Fraction(1)),
        ("2K4", Fraction(0)),
    ])
    def test_known_values(self, name, expected):
        expander = ExactCertifier().certify(REGULAR[name])
        assert expander.expansion == expected
        assert expander.certifying

    def test_witness_attains_minimum(self):
        graph = cycle_graph(6)
        expander = ExactCertifier().certify(graph)
        witness = 0
        for v in expander.witness:
            witness |= 1 << v
        ratio = Fraction(graph.neighborhood_mask(witness, NeighborhoodMode.CLOSED).bit_count(),
                         len(expander.witness))
        assert ratio - 1 == expander.expansion
        assert 2 * len(expander.witness) <= graph.n

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            ExactCertifier(OracleBudget(expansion=8)).certify(cycle_graph(10))
        assert not ExactCertifier(OracleBudget(unlimited=True)).feasible(63)

    def test_irregular_graph_rejected(self):
        with pytest.raises(PreconditionError):
            ExactCertifier().certify(path_graph(4))


class TestSpectral:

    @pytest.mark.parametrize("name", sorted(REGULAR))
    def test_never_exceeds_exact(self, name):
        graph = REGULAR[name]
        spectral = SpectralCertifier().certify(graph)
        assert 0 <= spectral.expansion <= ExactCertifier().certify(graph).expansion
        assert spectral.certifying

    def test_disconnected_and_bipartite_give_zero(self):
        assert SpectralCertifier().certify(REGULAR["2K4"]).expansion == 0
        assert SpectralCertifier().certify(REGULAR["K33"]).expansion == 0

    def test_complete_graph_second_eigenvalue(self):
        assert SpectralCertifier().second_eigenvalue(OrderedGraph.complete(5)) == pytest.approx(1.0)

    def test_large_graphs_are_feasible(self):
        assert SpectralCertifier().certify(cycle_graph(200)).n == 200


class TestSampled:

    @pytest.mark.parametrize("name", sorted(REGULAR))
    def test_never_below_exact(self, name):
        graph = REGULAR[name]
        sampled = SampledCertifier(trials=200).certify(graph, seed=1)
        assert sampled.expansion >= ExactCertifier().certify(graph).expansion
        assert not sampled.certifying

    def test_seeded(self):
        graph = cycle_graph(30)
        first = SampledCertifier(trials=100).certify(graph, seed=9)
        second = SampledCertifier(trials=100).certify(graph, seed=9)
        assert first.expansion == second.expansion
        assert first.witness == second.witness
