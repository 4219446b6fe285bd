# orl/domain/embedding.py
"""
Types du plongement biparti : profils de constantes et issues possibles,
puis états de l'algorithme principal et du sous-algorithme.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Any, Optional, Tuple, Union

from orl.domain.errors import ParameterError
from orl.domain.ordered_graph import VertexSet


def as_fraction(value: Union[Fraction, int, float, str]) -> Fraction:
    """Convertit sans bruit binaire (0.2 -> 1/5)"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ParameterError(f"invalid rational value '{value}': {e}")


class ConstantProfile(Enum):
    PAPER = "paper"
    LAB = "lab"


# Seuil sous lequel la somme des seuils t_j reste < n/4
SUM_BOUND_EPS = Fraction(1, 500)


@dataclass(frozen=True)
class EmbeddingConstants:
    """ε₁, α₁ de référence ; ε = 4ε₁ et α = 2α₁ pour le graphe élagué"""
    eps1: Fraction
    alpha1: Fraction
    profile: ConstantProfile = ConstantProfile.LAB

    def __post_init__(self):
        for name in ("eps1", "alpha1"):
            value = as_fraction(getattr(self, name))
            if not 0 < value < 1:
                raise ParameterError(f"{name} must lie in (0, 1), got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def paper(cls) -> "EmbeddingConstants":
        return cls(Fraction(1, 2000), Fraction(1, 200), ConstantProfile.PAPER)

    @classmethod
    def lab(cls, eps1=Fraction(1, 8), alpha1=Fraction(1, 4)) -> "EmbeddingConstants":
        return cls(as_fraction(eps1), as_fraction(alpha1), ConstantProfile.LAB)

    @classmethod
    def for_profile(cls, profile: Union[str, ConstantProfile], eps1=None,
                    alpha1=None) -> "EmbeddingConstants":
        profile = ConstantProfile(profile)
        if profile is ConstantProfile.PAPER:
            if eps1 is not None or alpha1 is not None:
                raise ParameterError("the paper profile has fixed constants; use --profile lab to override")
            return cls.paper()
        return cls.lab(eps1 if eps1 is not None else Fraction(1, 8),
                       alpha1 if alpha1 is not None else Fraction(1, 4))

    @property
    def eps(self) -> Fraction:
        return 4 * self.eps1

    @property
    def alpha(self) -> Fraction:
        return 2 * self.alpha1

    @property
    def enforces_sum_bound(self) -> bool:
        return self.eps <= SUM_BOUND_EPS

    def to_dict(self) -> Dict[str, Any]:
        return {"profile": self.profile.value, "eps1": str(self.eps1), "alpha1": str(self.alpha1)}


class OutcomeKind(Enum):
    SEPARATED = "separated"
    SPARSE = "sparse"
    DENSE = "dense"


class OutcomeRoute(Enum):
    MAIN = "main"
    FALLBACK = "fallback"


@dataclass(frozen=True)
class SeparatedFamilies:
    w_sets: Tuple[VertexSet, ...]
    x_sets: Tuple[VertexSet, ...]
    route: OutcomeRoute = OutcomeRoute.MAIN
    kind = OutcomeKind.SEPARATED

    @property
    def t(self) -> int:
        return len(self.x_sets)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value, "route": self.route.value, "t": self.t,
            "w_sets": [list(w) for w in self.w_sets],
            "x_sets": [list(x) for x in self.x_sets],
        }


@dataclass(frozen=True)
class SparsePair:
    a_side: VertexSet
    b_side: VertexSet
    route: OutcomeRoute = OutcomeRoute.MAIN
    kind = OutcomeKind.SPARSE

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "route": self.route.value,
                "a_side": list(self.a_side), "b_side": list(self.b_side)}


@dataclass(frozen=True)
class DenseVertex:
    vertex: int
    degree: int
    route: OutcomeRoute = OutcomeRoute.MAIN
    kind = OutcomeKind.DENSE

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "route": self.route.value,
                "vertex": self.vertex, "degree": self.degree}


EmbeddingOutcome = Union[SeparatedFamilies, SparsePair, DenseVertex]


@dataclass
class MainState:
    """
    État de l'algorithme principal, en positions locales du graphe élagué.

    Les ensembles sont des masques de bits ; a_star/b_star sont les restes.
    """
    n: int
    a_mask: int
    b_mask: int
    level: int
    j0: int
    a_star: int = 0
    b_star: int = 0
    steps: int = 0

    def threshold_sq(self, j: int) -> int:
        """t_j² = n·2^j"""
        return self.n << j


@dataclass
class SubState:
    z_mask: int
    level: int
    heavy_total: int = 0
    rounds: int = 0
    history: list = field(default_factory=list)

    @property
    def z_size(self) -> int:
        return self.z_mask.bit_count()


@dataclass(frozen=True)
class EmbeddingTrace:
    """Résumé d'exécution, pour les rapports"""
    trimmed_n: int
    j0: int
    main_steps: int
    sub_rounds: int
    case1_attempts: int
    derandomized: bool
    closing_threshold: Optional[Fraction] = None
    target_threshold: Optional[Fraction] = None

    @property
    def closed_below_target(self) -> bool:
        return (self.closing_threshold is not None and self.target_threshold is not None
                and self.closing_threshold != self.target_threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trimmed_n": self.trimmed_n, "j0": self.j0, "main_steps": self.main_steps,
            "sub_rounds": self.sub_rounds, "case1_attempts": self.case1_attempts,
            "derandomized": self.derandomized,
            "closing_threshold": None if self.closing_threshold is None else str(self.closing_threshold),
            "target_threshold": None if self.target_threshold is None else str(self.target_threshold),
        }
