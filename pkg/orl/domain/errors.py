# orl/domain/errors.py
"""
Hiérarchie d'exceptions du laboratoire.
"""


class OrlError(Exception):
    """Racine de toutes les erreurs levées par orl"""


class OgfFormatError(OrlError):
    """Fichier OGF mal formé"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class PreconditionError(OrlError, ValueError):
    """Précondition d'une opération violée par l'appelant"""


class ParameterError(OrlError, ValueError):
    """Jeu de paramètres incohérent (construction, profils)"""


class BudgetExceededError(OrlError):
    """Un oracle refuse une entrée au-delà de son budget"""

    def __init__(self, kind: str, n: int, limit: int):
        self.kind = kind
        self.n = n
        self.limit = limit
        super().__init__(f"oracle '{kind}' refuses n={n} (budget {limit})")


class InvariantBreachError(OrlError):
    """Un invariant interne n'a pas tenu (toujours signalé, jamais silencieux)"""


class EmbeddingError(InvariantBreachError):
    """Aucune issue vérifiable trouvée par la décomposition bipartie"""
