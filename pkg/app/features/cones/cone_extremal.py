"""
cone_extremal.py - Raios extremais e representantes efetivos de classes nulas.

Coordena:
- Pertinencia a PE_model via certificado da decomposicao
- Teste de raio extremal sobre uma lista finita de geradores (simplex exato)
- Construcao do representante efetivo M de uma classe nula nao extremal
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from app.config.settings import logger
from app.errors import (
    DimensionMismatch,
    InternalConsistencyFailure,
    NotInCone,
    NotPseudoEffective,
    PreconditionFailed,
    ProportionalityContradiction,
)
from app.features.cones.cone_service import in_dual_bk_cone, null_pair_classify
from app.features.zariski.zar_service import decompose, pe_witness
from app.models.lattice import DivisorClass, EffectiveExpression, HKModel
from app.models.reports import (
    ConeVerdict,
    ExtremalityResult,
    Inequality,
    NullRepresentative,
)
from app.utils.formatters import format_rational
from app.utils.simplex import INFEASIBLE, OPTIMAL, solve_lp


# ==========================================================================
# 1. PSEUDO-EFETIVIDADE
# ==========================================================================


def in_pseudo_effective_cone(model: HKModel, D: DivisorClass) -> ConeVerdict:
    """D em PE_model sse a decomposicao existe com parte positiva em C-barra."""
    model.space.require(D)
    try:
        pe_witness(model, D)
    except NotPseudoEffective as e:
        failed = [Inequality(e.code)]
        P = None
        try:
            P = decompose(model, D).P
        except NotPseudoEffective:
            pass
        if P is not None:
            failed = [
                Inequality("q(P) >= 0", model.q(P)),
                Inequality("q(P, omega) >= 0", model.q(P, model.kahler)),
            ]
            failed = [c for c in failed if c.value < 0]
        return ConeVerdict("pseudo_effective", tuple(failed))
    return ConeVerdict("pseudo_effective")


# ==========================================================================
# 2. RAIOS EXTREMAIS
# ==========================================================================


def _columns(generators: Sequence[DivisorClass], L: DivisorClass) -> list[list[Fraction]]:
    for g in generators:
        if len(g) != len(L):
            raise DimensionMismatch(
                f"Gerador com {len(g)} coordenadas para classe com {len(L)}."
            )
    # Linha i = coordenada i de todos os geradores
    return [[g.coords[i] for g in generators] for i in range(len(L))]


def extremal_ray_test(generators: Sequence[DivisorClass], L: DivisorClass) -> ExtremalityResult:
    """
    L gera raio nao extremal sse existe lambda >= 0 com sum lambda_i g_i = L
    e lambda_j > 0 para algum g_j nao proporcional a L.

    Para cada gerador nao proporcional j, maximiza lambda_j sobre
    {A lambda = L, lambda >= 0} pelo simplex exato; otimo positivo (ou
    ilimitado) produz a testemunha.

    Raises:
        PreconditionFailed: L nula.
        NotInCone: nenhuma combinacao nao negativa alcanca L.
    """
    if L.is_zero():
        raise PreconditionFailed("L deve ser nao nula.")
    A = _columns(generators, L)
    b = list(L.coords)

    feasible = solve_lp(A, b)
    if feasible.status == INFEASIBLE:
        raise NotInCone("L nao pertence ao cone gerado pelos geradores.")

    n = len(generators)
    for j, g in enumerate(generators):
        if g.is_zero() or g.proportionality_factor(L) is not None:
            continue
        objective = [Fraction(0)] * n
        objective[j] = Fraction(-1)
        result = solve_lp(A, b, objective)
        if result.status == OPTIMAL:
            if result.x[j] > 0:
                witness = result.x
            else:
                continue
        else:
            witness = tuple(x + d for x, d in zip(result.x, result.ray))
        logger.debug("Raio nao extremal: gerador %d com peso %s", j, format_rational(witness[j]))
        return ExtremalityResult("NotExtremal", witness)

    return ExtremalityResult("Extremal")


# ==========================================================================
# 3. REPRESENTANTE EFETIVO DE CLASSE NULA
# ==========================================================================


def _checked_class(model: HKModel, expr: EffectiveExpression, label: str) -> DivisorClass:
    problems = expr.violations(model)
    if problems:
        raise PreconditionFailed(f"Expressao de {label} invalida: {'; '.join(problems)}")
    return expr.to_class(model)


def effective_null_representative(
    model: HKModel,
    L: DivisorClass,
    d_expr: EffectiveExpression,
    g_expr: EffectiveExpression,
) -> NullRepresentative:
    """
    Para L nula no cone dual, escrita como L = D + G com D, G em PE_model
    nao proporcionais a L, constroi M efetivo com M = L:

      D = P_D + N_D, G = P_G + N_G, 0 = q(L) >= q(L, P_D) + q(L, P_G) >= 0,
      logo P_D = b L, P_G = g L e (1 - b - g) L = N_D + N_G com b + g < 1.

    Raises:
        PreconditionFailed: hipoteses sobre L, D ou G falham.
        ProportionalityContradiction: b + g = 1 (D e G eram proporcionais a L).
    """
    model.space.require(L)
    if L.is_zero():
        raise PreconditionFailed("L deve ser nao nula.")
    verdict = in_dual_bk_cone(model, L)
    if not verdict.member:
        raise PreconditionFailed(
            "L fora do cone dual.",
            failed_conditions=[c.to_dict() for c in verdict.failed_conditions],
        )
    if model.q(L) != 0:
        raise PreconditionFailed(f"q(L) = {format_rational(model.q(L))} != 0.")

    D = _checked_class(model, d_expr, "D")
    G = _checked_class(model, g_expr, "G")
    if D + G != L:
        raise PreconditionFailed("D + G nao e' igual a L.")

    dec_D = decompose(model, D)
    dec_G = decompose(model, G)
    if dec_D.diagnostics or dec_G.diagnostics:
        raise InternalConsistencyFailure(
            "Parte positiva fora do cone positivo fechado; lista de primos incompleta.",
            diagnostics=sorted(set(dec_D.diagnostics) | set(dec_G.diagnostics)),
        )

    factors: list[Fraction] = []
    for label, P in (("P_D", dec_D.P), ("P_G", dec_G.P)):
        pairing = model.q(L, P)
        if pairing != 0:
            raise InternalConsistencyFailure(f"q(L, {label}) = {format_rational(pairing)} != 0.")
        classified = null_pair_classify(
            model, L, P, EffectiveExpression(positive_part=P)
        )
        if classified.kind != "Parallel":
            raise InternalConsistencyFailure(f"{label} nao e' paralelo a L.")
        factors.append(classified.factor)
    b, g = factors

    if b + g == 1:
        raise ProportionalityContradiction(
            "b + g = 1: D e G sao proporcionais a L.",
            b=format_rational(b),
            g=format_rational(g),
        )
    if b + g > 1:
        raise InternalConsistencyFailure(f"b + g = {format_rational(b + g)} > 1.")

    scale = 1 - b - g
    coefficients: dict[str, Fraction] = {}
    for dec in (dec_D, dec_G):
        for name, c in dec.N_coeffs.items():
            coefficients[name] = coefficients.get(name, Fraction(0)) + c / scale
    coefficients = {name: coefficients[name] for name in sorted(coefficients)}

    M = model.combination(coefficients)
    if M != L:
        raise InternalConsistencyFailure("Combinacao efetiva M nao reproduz L.")
    logger.info(
        "Representante efetivo construido: b=%s, g=%s, suporte=%s",
        format_rational(b),
        format_rational(g),
        list(coefficients),
    )
    return NullRepresentative(M=M, coefficients=coefficients, b=b, g=g)
