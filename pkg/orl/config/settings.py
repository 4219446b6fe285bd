# orl/config/settings.py
"""
Configuration du laboratoire : variables d'environnement (.env accepté),
budgets des oracles et options validées d'une exécution CLI.
"""
import os
from fractions import Fraction
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from orl.domain.embedding import ConstantProfile, EmbeddingConstants, as_fraction
from orl.domain.errors import ParameterError

TRUTHY = {"1", "true", "yes", "on"}


class OracleBudget(BaseModel):
    """n maximal accepté par chaque oracle"""
    closure: int = 10
    pattern: int = 14
    pattern_size: int = 5
    clique: int = 40
    biclique: int = 40
    expansion: int = 24
    pair_bound: int = 14
    unlimited: bool = False

    def limit(self, kind: str) -> Optional[int]:
        if self.unlimited:
            return None
        return getattr(self, kind)

    @classmethod
    def from_override(cls, raw: Optional[str]) -> "OracleBudget":
        """`ORL_BUDGET_OVERRIDE` : booléen vrai, ou `kind=value,...`"""
        if not raw:
            return cls()
        text = raw.strip()
        if text.lower() in TRUTHY:
            return cls(unlimited=True)
        values: Dict[str, int] = {}
        for item in text.split(","):
            if not item.strip():
                continue
            key, sep, value = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in cls.model_fields or key == "unlimited":
                raise ParameterError(f"invalid budget override entry '{item}'")
            try:
                values[key] = int(value)
            except ValueError:
                raise ParameterError(f"budget '{key}' must be an integer, got '{value}'")
        return cls(**values)


class Settings(BaseModel):
    log_level: str = "WARNING"
    check_invariants: bool = True
    base_size: int = Field(default=16, ge=1, le=24)
    sampled_trials: int = Field(default=2000, ge=0)
    oracle_budget: OracleBudget = Field(default_factory=OracleBudget)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    @classmethod
    def from_env(cls, dotenv: bool = True) -> "Settings":
        if dotenv:
            load_dotenv()
        env = os.environ
        return cls(
            log_level=env.get("ORL_LOG_LEVEL", "WARNING"),
            check_invariants=env.get("ORL_CHECK_INVARIANTS", "1").strip().lower() in TRUTHY,
            base_size=int(env.get("ORL_BASE_SIZE", "16")),
            sampled_trials=int(env.get("ORL_SAMPLED_TRIALS", "2000")),
            oracle_budget=OracleBudget.from_override(env.get("ORL_BUDGET_OVERRIDE")),
        )


class RunConfig(BaseModel):
    """Options d'une commande, validées avant exécution"""
    command: str
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    profile: ConstantProfile = ConstantProfile.LAB
    eps1: Optional[str] = None
    alpha1: Optional[str] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None

    @field_validator("eps1", "alpha1")
    @classmethod
    def _rational(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        fraction = as_fraction(value)
        return str(fraction)

    def embedding_constants(self) -> EmbeddingConstants:
        return EmbeddingConstants.for_profile(
            self.profile,
            eps1=Fraction(self.eps1) if self.eps1 is not None else None,
            alpha1=Fraction(self.alpha1) if self.alpha1 is not None else None,
        )
