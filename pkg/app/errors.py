"""
Hierarquia de erros do hkz.

Cada erro carrega um `exit_code` (o equivalente, na linha de comando, ao
status HTTP) e um `detail` legivel. A CLI serializa qualquer erro como
{"error": <nome da classe>, "detail": ...}.

  1 - uso / parse
  2 - erro de dominio (entrada fora do modelo, modelo invalido, ...)
  3 - falha de consistencia interna (um teorema foi violado)
"""

from __future__ import annotations

from typing import Any


class HKZError(Exception):
    """Erro base. Subclasses definem apenas o exit_code."""

    exit_code: int = 2

    def __init__(self, detail: str, **context: Any) -> None:
        super().__init__(detail)
        self.detail = detail
        self.context = context

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        """Serializa o erro para o objeto JSON da CLI."""
        payload: dict[str, Any] = {"error": self.code, "detail": self.detail}
        payload.update(self.context)
        return payload


# ---------------------------------------------------------------------------
# exit 1 - uso e parse
# ---------------------------------------------------------------------------


class UsageError(HKZError):
    exit_code = 1


class ParseError(HKZError):
    exit_code = 1


# ---------------------------------------------------------------------------
# exit 2 - dominio
# ---------------------------------------------------------------------------


class DomainError(HKZError):
    exit_code = 2


class DimensionMismatch(DomainError):
    pass


class SingularMatrix(DomainError):
    pass


class UnknownCatalogName(DomainError):
    pass


class PreconditionFailed(DomainError):
    pass


class OracleLimitExceeded(PreconditionFailed):
    pass


class NotInCone(DomainError):
    pass


class ProportionalityContradiction(DomainError):
    pass


class NotPseudoEffective(DomainError):
    """A classe nao esta em PE_model (relativo a lista de primos)."""


class SupportNotNegativeDefinite(NotPseudoEffective):
    pass


class NegativeCoefficient(NotPseudoEffective):
    pass


class SingularSupportGram(NotPseudoEffective):
    pass


class NoValidSubset(NotPseudoEffective):
    pass


class ModelViolationError(DomainError):
    """Modelo invalido; `violations` lista todas as violacoes encontradas."""


class SignatureViolation(ModelViolationError):
    pass


class PrimePairingViolation(ModelViolationError):
    pass


class KahlerViolation(ModelViolationError):
    pass


class DuplicatePrime(ModelViolationError):
    pass


class ZeroPrime(ModelViolationError):
    pass


VIOLATION_ERRORS: dict[str, type[ModelViolationError]] = {
    cls.__name__: cls
    for cls in (
        SignatureViolation,
        PrimePairingViolation,
        KahlerViolation,
        DuplicatePrime,
        ZeroPrime,
    )
}


# ---------------------------------------------------------------------------
# exit 3 - consistencia interna
# ---------------------------------------------------------------------------


class InternalConsistencyFailure(HKZError):
    exit_code = 3


class MultipleDistinctDecompositions(InternalConsistencyFailure):
    pass


class OracleMismatch(InternalConsistencyFailure):
    pass
