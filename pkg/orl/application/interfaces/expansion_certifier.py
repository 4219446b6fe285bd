"""
Interface abstraite pour les modes de certification d'expansion.
"""
from abc import ABC, abstractmethod

from orl.domain.construction import CertificationMode, CertifiedExpander
from orl.domain.ordered_graph import OrderedGraph


class ExpansionCertifier(ABC):
    """Interface commune aux certificateurs exact, spectral et échantillonné"""

    mode: CertificationMode

    @abstractmethod
    def certify(self, graph: OrderedGraph, seed: int = 0) -> CertifiedExpander:
        """Calcule λ pour un graphe régulier"""
        pass

    @abstractmethod
    def feasible(self, n: int) -> bool:
        """Indique si le mode accepte un graphe à n sommets"""
        pass
