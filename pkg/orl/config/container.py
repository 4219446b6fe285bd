# orl/config/container.py
"""
Conteneur d'injection de dépendances du laboratoire
"""
from dependency_injector import containers, providers

from orl.config.settings import Settings
from orl.infrastructure.certifiers import build_registry
from orl.infrastructure.io.ogf_codec import OgfCodec
from orl.infrastructure.services.closure_service import ClosureService
from orl.infrastructure.services.construction_service import ConstructionService
from orl.infrastructure.services.embedding_service import EmbeddingService
from orl.infrastructure.services.homogeneous_service import HomogeneousService
from orl.infrastructure.services.oracle_service import OracleService
from orl.infrastructure.services.pattern_service import PatternService
from orl.infrastructure.services.qeh_service import QehService


class Container(containers.DeclarativeContainer):
    """Services partagés, construits une seule fois par exécution"""

    settings = providers.Singleton(Settings.from_env)

    codec = providers.Singleton(OgfCodec)

    # Services de base
    closure_service = providers.Singleton(ClosureService)
    pattern_service = providers.Singleton(PatternService)
    oracle_service = providers.Singleton(
        OracleService,
        budget=settings.provided.oracle_budget
    )

    # Décompositions
    embedding_service = providers.Singleton(
        EmbeddingService,
        check_invariants=settings.provided.check_invariants
    )
    qeh_service = providers.Singleton(
        QehService,
        closure_service=closure_service,
        embedding_service=embedding_service,
        check_invariants=settings.provided.check_invariants
    )
    homogeneous_service = providers.Singleton(
        HomogeneousService,
        qeh_service=qeh_service,
        check_invariants=settings.provided.check_invariants,
        base_size=settings.provided.base_size
    )

    # Construction par expanseurs
    certifiers = providers.Singleton(
        build_registry,
        budget=settings.provided.oracle_budget,
        sampled_trials=settings.provided.sampled_trials
    )
    construction_service = providers.Singleton(
        ConstructionService,
        certifiers=certifiers,
        pattern_service=pattern_service,
        budget=settings.provided.oracle_budget,
        check_invariants=settings.provided.check_invariants
    )


container = Container()
