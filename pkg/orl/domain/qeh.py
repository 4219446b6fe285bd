# orl/domain/qeh.py
"""
Constantes et résultats de la décomposition quasi-Erdős–Hajnal.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Any, List, Tuple, Union

from orl.domain.embedding import EmbeddingConstants
from orl.domain.errors import ParameterError
from orl.domain.ordered_graph import VertexSet


@dataclass(frozen=True)
class QehConstants:
    """
    Chaîne c_1 = ε₁/2, c_{s+1} = ε₁·c_s/4, ε = c_k/2, α = α₁·√c_k / 2.

    α est irrationnel en général : on conserve α² exactement.
    """
    k: int
    embedding: EmbeddingConstants

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"path size k must be >= 1, got {self.k}")

    def c(self, s: int) -> Fraction:
        if s < 1:
            raise ParameterError(f"c_s is defined for s >= 1, got {s}")
        value = self.embedding.eps1 / 2
        for _ in range(s - 1):
            value = self.embedding.eps1 * value / 4
        return value

    @property
    def chain(self) -> Tuple[Fraction, ...]:
        return tuple(self.c(s) for s in range(1, self.k + 1))

    @property
    def eps(self) -> Fraction:
        return self.c(self.k) / 2

    @property
    def alpha_sq(self) -> Fraction:
        return self.embedding.alpha1 ** 2 * self.c(self.k) / 4

    @property
    def alpha(self) -> float:
        return float(self.alpha_sq) ** 0.5

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "eps": str(self.eps), "alpha_sq": str(self.alpha_sq),
                **self.embedding.to_dict()}


class QuasiMode(Enum):
    INDEPENDENT = "independent"   # aucune arête entre les X_i
    COMPLETE = "complete"         # X_i complet vers X_j


@dataclass
class PathState:
    """x_1..x_s choisis et U_s = V ∖ ⋃_{i<s} N(x_i) (masque)"""
    path: List[int]
    surviving: int

    @property
    def s(self) -> int:
        return len(self.path)

    @property
    def alive(self) -> int:
        """U_s ∪ {x_s}"""
        return self.surviving | (1 << self.path[-1]) if self.path else self.surviving


@dataclass(frozen=True)
class StepRecord:
    s: int
    x_size: int
    y_size: int
    z_size: int
    variant: str
    route: str

    def to_dict(self) -> Dict[str, Any]:
        return {"s": self.s, "x": self.x_size, "y": self.y_size, "z": self.z_size,
                "variant": self.variant, "route": self.route}


@dataclass(frozen=True)
class PathResult:
    vertices: VertexSet
    trace: Tuple[StepRecord, ...] = field(default=(), compare=False)
    kind = "path"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "vertices": list(self.vertices),
                "trace": [r.to_dict() for r in self.trace]}


@dataclass(frozen=True)
class FamilyResult:
    sets: Tuple[VertexSet, ...]
    trace: Tuple[StepRecord, ...] = field(default=(), compare=False)
    kind = "family"

    @property
    def t(self) -> int:
        return len(self.sets)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "t": self.t, "sets": [list(x) for x in self.sets],
                "trace": [r.to_dict() for r in self.trace]}


QehResult = Union[PathResult, FamilyResult]
