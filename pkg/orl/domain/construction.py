# orl/domain/construction.py
"""
Types de la construction par expanseurs : expanseur certifié, paramètres du
gonflement, structure de blocs et certificat.
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Any, List, Optional, Tuple

from orl.domain.errors import ParameterError
from orl.domain.ordered_graph import OrderedGraph, VertexSet


class CertificationMode(Enum):
    EXACT = "exact"
    SPECTRAL = "spectral"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class CertifiedExpander:
    """
    Graphe d-régulier et paramètre d'expansion λ.

    exact : λ maximal ; spectral : borne inférieure prouvée ;
    sampled : estimation (majorant observé), non certifiante.
    """
    graph: OrderedGraph
    degree: int
    expansion: Fraction
    mode: CertificationMode
    witness: VertexSet = ()

    @property
    def certifying(self) -> bool:
        return self.mode is not CertificationMode.SAMPLED

    @property
    def n(self) -> int:
        return self.graph.n

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n, "degree": self.degree, "lambda": str(self.expansion),
            "lambda_float": float(self.expansion), "mode": self.mode.value,
            "certifying": self.certifying, "witness": list(self.witness),
        }


@dataclass(frozen=True)
class BlockStructure:
    """k blocs consécutifs A_0 ≺ … ≺ A_{k-1} de taille m"""
    k: int
    m: int

    @property
    def n(self) -> int:
        return self.k * self.m

    def block_of(self, v: int) -> int:
        return v // self.m

    def block(self, a: int) -> range:
        return range(a * self.m, (a + 1) * self.m)

    def block_mask(self, a: int) -> int:
        return ((1 << self.m) - 1) << (a * self.m)

    def after_mask(self, a: int) -> int:
        """Union des blocs strictement après a"""
        return ((1 << self.n) - 1) & ~((1 << ((a + 1) * self.m)) - 1)


@dataclass(frozen=True)
class BlowupParams:
    k: int
    f: int
    m: int
    eps: Optional[Fraction] = None
    theorem_mode: bool = False
    deviations: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.k < 1 or self.f < 1 or self.m < 1:
            raise ParameterError(f"k, f, m must all be >= 1 (got k={self.k}, f={self.f}, m={self.m})")

    @property
    def n(self) -> int:
        return self.k * self.m

    @classmethod
    def explicit(cls, k: int, f: int, m: int) -> "BlowupParams":
        return cls(k=k, f=f, m=m)

    @classmethod
    def from_theorem(cls, eps: Fraction, n: int) -> "BlowupParams":
        """k = 2/ε, f = log₂n/(4·2^k), m = n/k, arrondis et consignés"""
        if not 0 < eps <= 1:
            raise ParameterError(f"eps must lie in (0, 1], got {eps}")
        deviations = []
        exact_k = 2 / eps
        k = math.ceil(exact_k)
        if k != exact_k:
            deviations.append(f"k rounded up from {exact_k} to {k}")
        raw_f = math.log2(n) / (4 * 2 ** k) if n > 0 else 0.0
        f = max(1, math.ceil(raw_f))
        if f != raw_f:
            deviations.append(f"f rounded up from {raw_f:.6g} to {f}")
        m = n // k
        if m < 1:
            raise ParameterError(f"n={n} is too small for k={k} blocks")
        if m * k != n:
            deviations.append(f"n truncated from {n} to {m * k}")
        return cls(k=k, f=f, m=m, eps=eps, theorem_mode=True, deviations=tuple(deviations))

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "f": self.f, "m": self.m, "n": self.n,
                "eps": None if self.eps is None else str(self.eps),
                "theorem_mode": self.theorem_mode, "deviations": list(self.deviations)}


@dataclass(frozen=True)
class PairBoundReport:
    """|X||Y| ≤ n²(1+λ)^{-r} pour les paires sans arête de H^r"""
    label: str
    n: int
    r: int
    expansion: Fraction
    max_product: int
    witness_x: VertexSet
    witness_y: VertexSet

    @property
    def bound(self) -> Fraction:
        return Fraction(self.n * self.n) / (1 + self.expansion) ** self.r

    @property
    def holds(self) -> bool:
        return self.max_product <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label, "n": self.n, "r": self.r, "max_product": self.max_product,
                "bound": float(self.bound), "holds": self.holds,
                "witness_x": list(self.witness_x), "witness_y": list(self.witness_y)}


@dataclass(frozen=True)
class BlowupReport:
    """Borne de degré, triplets interdits et bornes par paires de blocs"""
    max_degree: int
    degree_bound: int
    bad_triple: Optional[Tuple[int, int, int]]
    pair_reports: Tuple[PairBoundReport, ...] = ()

    @property
    def degree_ok(self) -> bool:
        return self.max_degree <= self.degree_bound

    @property
    def no_bad_triple_ok(self) -> bool:
        return self.bad_triple is None

    @property
    def pairs_ok(self) -> bool:
        return all(r.holds for r in self.pair_reports)


@dataclass(frozen=True)
class BicliqueWitness:
    size: int
    left: VertexSet
    right: VertexSet


@dataclass(frozen=True)
class PigeonholeReport:
    biclique: BicliqueWitness
    k: int
    blocks: Tuple[int, int]
    part_sizes: Tuple[int, int]
    best_block_pair: int

    @property
    def holds(self) -> bool:
        return min(self.part_sizes) * self.k >= self.biclique.size and \
            self.best_block_pair * self.k >= self.biclique.size

    def to_dict(self) -> Dict[str, Any]:
        return {"biclique": self.biclique.size, "k": self.k, "blocks": list(self.blocks),
                "part_sizes": list(self.part_sizes), "best_block_pair": self.best_block_pair,
                "holds": self.holds}


@dataclass(frozen=True)
class ConstructionCertificate:
    params: BlowupParams
    expander: CertifiedExpander
    max_degree: int
    degree_target: int
    max_degree_ok: bool
    no_bad_triple_ok: bool
    pattern_s_free: bool
    pattern_p_free: bool
    pair_bound_report: Tuple[PairBoundReport, ...] = ()
    degree_eps_ok: Optional[bool] = None
    deviations: Tuple[str, ...] = ()

    @property
    def delta(self) -> float:
        """δ = log₂(1+λ)/2^k"""
        return math.log2(1 + float(self.expander.expansion)) / 2 ** self.params.k

    @property
    def biclique_bound(self) -> float:
        return self.params.n ** (1 - self.delta)

    @property
    def passed(self) -> bool:
        # La borne εn du mode théorème est seulement rapportée
        return (self.max_degree_ok and self.no_bad_triple_ok and self.pattern_s_free
                and self.pattern_p_free and all(r.holds for r in self.pair_bound_report))

    def to_lines(self) -> List[Tuple[str, Any]]:
        lines = [
            ("k", self.params.k), ("f", self.params.f), ("m", self.params.m), ("n", self.params.n),
            ("theorem_mode", self.params.theorem_mode),
            ("expander_degree", self.expander.degree),
            ("lambda", str(self.expander.expansion)),
            ("lambda_mode", self.expander.mode.value),
            ("lambda_certifying", self.expander.certifying),
            ("delta", f"{self.delta:.6g}"),
            ("biclique_bound", f"{self.biclique_bound:.6g}"),
            ("max_degree", self.max_degree), ("degree_target", self.degree_target),
            ("max_degree_ok", self.max_degree_ok),
            ("no_bad_triple_ok", self.no_bad_triple_ok),
            ("pattern_S_free", self.pattern_s_free),
            ("pattern_P_free", self.pattern_p_free),
        ]
        if self.degree_eps_ok is not None:
            lines.append(("degree_eps_ok", self.degree_eps_ok))
        for report in self.pair_bound_report:
            lines.append((f"pair_bound[{report.label}]",
                          f"{report.max_product} <= {float(report.bound):.6g} {'ok' if report.holds else 'FAIL'}"))
        for i, note in enumerate(self.deviations):
            lines.append((f"deviation[{i}]", note))
        lines.append(("passed", self.passed))
        return lines
