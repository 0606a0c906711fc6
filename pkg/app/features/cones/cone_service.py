"""
cone_service.py - Predicados de cone e classificacao de pares nulos.

Cones do modelo (omega = classe de Kahler distinguida do HKModel):
  C       : q(L) > 0 e q(L, omega) > 0
  C-barra : q(L) >= 0 e q(L, omega) >= 0
  BK-barra: q(L, E) >= 0 para todo primo E, intersectado com C-barra
            (o dual de PE_model = cone(primos) + C-barra)
"""

from __future__ import annotations

from typing import Optional

from app.config.settings import logger
from app.errors import InternalConsistencyFailure, PreconditionFailed
from app.models.lattice import DivisorClass, EffectiveExpression, HKModel
from app.models.reports import ConeVerdict, Inequality, NullPairResult
from app.utils.formatters import format_rational


def _positive_conditions(model: HKModel, L: DivisorClass, strict: bool) -> list[Inequality]:
    model.space.require(L)
    q_L = model.q(L)
    q_omega = model.q(L, model.kahler)
    failed: list[Inequality] = []
    if strict:
        if not q_L > 0:
            failed.append(Inequality("q(L) > 0", q_L))
        if not q_omega > 0:
            failed.append(Inequality("q(L, omega) > 0", q_omega))
    else:
        if not q_L >= 0:
            failed.append(Inequality("q(L) >= 0", q_L))
        if not q_omega >= 0:
            failed.append(Inequality("q(L, omega) >= 0", q_omega))
    return failed


def in_positive_cone(model: HKModel, L: DivisorClass) -> ConeVerdict:
    """L em C sse q(L) > 0 e q(L, omega) > 0."""
    return ConeVerdict("positive", tuple(_positive_conditions(model, L, strict=True)))


def in_closed_positive_cone(model: HKModel, L: DivisorClass) -> ConeVerdict:
    """L no fecho C-barra sse q(L) >= 0 e q(L, omega) >= 0."""
    return ConeVerdict("closed_positive", tuple(_positive_conditions(model, L, strict=False)))


def in_dual_bk_cone(model: HKModel, L: DivisorClass) -> ConeVerdict:
    """
    Modelo de BK-barra(X): pareamento nao negativo com todos os primos
    do modelo e pertinencia a C-barra.
    """
    model.space.require(L)
    failed: list[Inequality] = []
    for name, prime in model.primes.items():
        value = model.q(L, prime)
        if value < 0:
            failed.append(Inequality(f"q(L, {name}) >= 0", value))
    failed.extend(_positive_conditions(model, L, strict=False))
    return ConeVerdict("dual_bk", tuple(failed))


def null_pair_classify(
    model: HKModel,
    L: DivisorClass,
    D: DivisorClass,
    witness: Optional[EffectiveExpression] = None,
) -> NullPairResult:
    """
    Dicotomia para 0 != L em C-barra e q(L, D) = 0: ou D e' multiplo
    racional de L (e q(D) = 0), ou q(D) < 0.

    A dicotomia e' um teorema da assinatura (1, r-1); se falhar, o modelo
    nao tem a assinatura declarada e levantamos InternalConsistencyFailure.
    """
    model.space.require(L)
    model.space.require(D)
    if L.is_zero():
        raise PreconditionFailed("L deve ser nao nula.")
    closed = in_closed_positive_cone(model, L)
    if not closed.member:
        raise PreconditionFailed(
            "L fora do cone positivo fechado.",
            failed_conditions=[c.to_dict() for c in closed.failed_conditions],
        )
    q_LD = model.q(L, D)
    if q_LD != 0:
        raise PreconditionFailed(f"q(L, D) = {format_rational(q_LD)} != 0.")
    if witness is not None:
        problems = witness.violations(model)
        if problems:
            raise PreconditionFailed(f"Testemunha de PE invalida: {'; '.join(problems)}")
        if witness.to_class(model) != D:
            raise PreconditionFailed("Testemunha de PE nao soma a D.")

    q_D = model.q(D)
    factor = D.proportionality_factor(L)
    if factor is not None:
        if q_D != 0:
            raise InternalConsistencyFailure(
                f"D paralelo a L com q(D) = {format_rational(q_D)} != 0."
            )
        return NullPairResult("Parallel", q_D, factor)

    if q_D >= 0:
        raise InternalConsistencyFailure(
            f"D nao paralelo a L com q(D) = {format_rational(q_D)} >= 0."
        )
    logger.debug("Par nulo classificado: NegativeSquare, q(D)=%s", q_D)
    return NullPairResult("NegativeSquare", q_D)
