# orl/infrastructure/certifiers/base.py
"""
Classe de base des certificateurs d'expansion
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Optional, Tuple

from orl.application.interfaces.expansion_certifier import ExpansionCertifier
from orl.config.settings import OracleBudget
from orl.domain.construction import CertificationMode, CertifiedExpander
from orl.domain.errors import BudgetExceededError, PreconditionError
from orl.domain.ordered_graph import OrderedGraph, VertexSet


class BaseCertifier(ExpansionCertifier, ABC):
    """Vérifie la régularité et la faisabilité puis délègue le calcul de λ"""

    mode: CertificationMode

    def __init__(self, budget: Optional[OracleBudget] = None):
        self.budget = budget or OracleBudget()
        self.logger = logging.getLogger(f"certifier.{self.mode.value}")

    @staticmethod
    def regular_degree(graph: OrderedGraph) -> int:
        if graph.n < 2:
            raise PreconditionError(f"expander needs at least 2 vertices, got {graph.n}")
        degree = graph.degree(0)
        for v in range(1, graph.n):
            if graph.degree(v) != degree:
                raise PreconditionError(
                    f"graph is not regular: deg(0)={degree}, deg({v})={graph.degree(v)}"
                )
        return degree

    def feasible(self, n: int) -> bool:
        return True

    def certify(self, graph: OrderedGraph, seed: int = 0) -> CertifiedExpander:
        degree = self.regular_degree(graph)
        if not self.feasible(graph.n):
            raise BudgetExceededError("expansion", graph.n, self.budget.limit("expansion"))
        expansion, witness = self._do_certify(graph, degree, seed)
        self.logger.debug(f"n={graph.n} d={degree}: lambda={expansion} ({float(expansion):.6g})")
        return CertifiedExpander(graph, degree, expansion, self.mode, witness)

    @abstractmethod
    def _do_certify(self, graph: OrderedGraph, degree: int, seed: int) -> Tuple[Fraction, VertexSet]:
        """Implémentation spécifique : (λ, ensemble témoin)"""
        pass
