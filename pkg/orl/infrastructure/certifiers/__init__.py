from typing import Dict, Optional

from orl.config.settings import OracleBudget
from orl.domain.construction import CertificationMode

from .base import BaseCertifier
from .exact import ExactCertifier
from .sampled import SampledCertifier
from .spectral import SpectralCertifier

__all__ = ['BaseCertifier', 'ExactCertifier', 'SampledCertifier', 'SpectralCertifier', 'build_registry']


def build_registry(budget: Optional[OracleBudget] = None,
                   sampled_trials: int = 2000) -> Dict[CertificationMode, BaseCertifier]:
    return {
        CertificationMode.EXACT: ExactCertifier(budget),
        CertificationMode.SPECTRAL: SpectralCertifier(budget),
        CertificationMode.SAMPLED: SampledCertifier(budget, sampled_trials),
    }
