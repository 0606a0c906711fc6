"""
zar_service.py - O "motor" da decomposicao de Zariski q.

Responsavel por:
1. Construir D = P + N pela iteracao construtiva (rodadas de primos com
   pareamento negativo, resolvendo o sistema de ortogonalidade no suporte
   acumulado).
2. Oraculo independente por forca bruta sobre subconjuntos definidos
   negativos.
3. Verificar as tres condicoes da decomposicao.
4. Checar a minimalidade de N_D entre os N' com D - N' no cone dual.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from app.config.settings import BRUTEFORCE_MAX_PRIMES, logger
from app.errors import (
    InternalConsistencyFailure,
    MultipleDistinctDecompositions,
    NegativeCoefficient,
    NoValidSubset,
    NotPseudoEffective,
    OracleLimitExceeded,
    PreconditionFailed,
    SingularMatrix,
    SingularSupportGram,
    SupportNotNegativeDefinite,
)
from app.features.cones.cone_service import in_dual_bk_cone
from app.models.lattice import DivisorClass, EffectiveExpression, HKModel
from app.models.reports import (
    INCOMPLETE_MODEL,
    Decomposition,
    VerificationCheck,
    VerificationReport,
)
from app.utils.formatters import format_rational
from app.utils.ratlin import gram, is_negative_definite, rank, solve_symmetric


# ==========================================================================
# 1. SISTEMA DE ORTOGONALIDADE
# ==========================================================================


def _orthogonality_solution(
    model: HKModel, D: DivisorClass, support: Sequence[str]
) -> tuple[Fraction, ...]:
    """
    Resolve q(D - sum x_E E, E') = 0 para E' no suporte, isto e'
    Gram(suporte) . x = (q(D, E'))_E'.
    """
    classes = [model.primes[name] for name in support]
    support_gram = gram(model.space, classes)
    rhs = [model.q(D, cls) for cls in classes]
    try:
        return solve_symmetric(support_gram, rhs)
    except SingularMatrix as e:
        raise SingularSupportGram(
            f"Gram singular no suporte {list(support)}.", support=list(support)
        ) from e


def _diagnostics(model: HKModel, P: DivisorClass) -> tuple[str, ...]:
    # Com a lista completa de primos, P em BK-barra forca q(P) >= 0 e q(P, omega) >= 0
    if model.q(P) < 0 or model.q(P, model.kahler) < 0:
        logger.warning(
            "Parte positiva fora do cone positivo fechado (q(P)=%s, q(P,omega)=%s): "
            "lista de primos provavelmente incompleta.",
            model.q(P),
            model.q(P, model.kahler),
        )
        return (INCOMPLETE_MODEL,)
    return ()


# ==========================================================================
# 2. ITERACAO CONSTRUTIVA
# ==========================================================================


def decompose(model: HKModel, D: DivisorClass) -> Decomposition:
    """
    Decomposicao de Zariski q de D relativa a lista de primos do modelo.

    Rodada k: coleta todo primo com q(D_k, E) < 0, acumula no suporte,
    resolve o sistema de ortogonalidade completo sobre o suporte acumulado
    e subtrai. Termina quando nenhum primo pareia negativamente; como
    suportes definidos negativos sao linearmente independentes, o suporte
    tem no maximo r elementos.

    Raises:
        SupportNotNegativeDefinite, NegativeCoefficient, SingularSupportGram:
            D fora de PE_model (ou modelo invalido).
    """
    model.space.require(D)
    if D.is_zero():
        return Decomposition(P=D, N_coeffs={}, rounds=0, trace=(D,))

    support: list[str] = []
    solution: tuple[Fraction, ...] = ()
    current = D
    trace = [D]
    rounds = 0

    while True:
        flagged = [
            name
            for name, prime in model.primes.items()
            if name not in support and model.q(current, prime) < 0
        ]
        if not flagged:
            break

        rounds += 1
        support = sorted(support + flagged)
        support_gram = gram(model.space, [model.primes[name] for name in support])
        if not is_negative_definite(support_gram):
            raise SupportNotNegativeDefinite(
                f"Rodada {rounds}: Gram do suporte {support} nao e' definida negativa; "
                "D fora de PE_model.",
                support=support,
            )

        solution = _orthogonality_solution(model, D, support)
        negative = [name for name, x in zip(support, solution) if x < 0]
        if negative:
            raise NegativeCoefficient(
                f"Rodada {rounds}: coeficientes negativos em {negative}; D fora de PE_model.",
                support=support,
            )

        current = D - model.combination(dict(zip(support, solution)))
        trace.append(current)
        logger.debug(
            "Rodada %d: novos=%s, suporte=%s, coeficientes=%s",
            rounds,
            flagged,
            support,
            [format_rational(x) for x in solution],
        )

    # Coeficiente zero sai do suporte
    N = {name: x for name, x in zip(support, solution) if x != 0}
    if rank([model.primes[name].coords for name in N]) != len(N):
        raise InternalConsistencyFailure(f"Suporte {sorted(N)} linearmente dependente.")

    result = Decomposition(
        P=current,
        N_coeffs=N,
        rounds=rounds,
        diagnostics=_diagnostics(model, current),
        trace=tuple(trace),
    )
    logger.info(
        "Decomposicao concluida: %d rodada(s), suporte=%s", rounds, result.support
    )
    return result


# ==========================================================================
# 3. ORACULO POR FORCA BRUTA
# ==========================================================================


def _negative_definite_subsets(model: HKModel) -> Iterator[tuple[str, ...]]:
    """
    Enumera todos os subconjuntos de primos com Gram definida negativa,
    por tamanho crescente. Todo subconjunto de um conjunto definido
    negativo tambem o e', entao basta estender os do nivel anterior.
    """
    names = model.prime_names
    level: list[tuple[str, ...]] = [()]
    while level:
        yield from level
        next_level: list[tuple[str, ...]] = []
        for subset in level:
            start = names.index(subset[-1]) + 1 if subset else 0
            for name in names[start:]:
                candidate = subset + (name,)
                candidate_gram = gram(model.space, [model.primes[n] for n in candidate])
                if is_negative_definite(candidate_gram):
                    next_level.append(candidate)
        level = next_level


def decompose_bruteforce(model: HKModel, D: DivisorClass) -> Decomposition:
    """
    Unicidade por exaustao: aceita o suporte S sse a solucao de
    ortogonalidade e' nao negativa e P = D - sum x_E E pareia >= 0 com
    todos os primos do modelo.

    Raises:
        OracleLimitExceeded: mais primos que HKZ_BRUTEFORCE_MAX_PRIMES.
        NoValidSubset: D fora de PE_model.
        MultipleDistinctDecompositions: impossivel em modelos validos.
    """
    model.space.require(D)
    if len(model.primes) > BRUTEFORCE_MAX_PRIMES:
        raise OracleLimitExceeded(
            f"Oraculo limitado a {BRUTEFORCE_MAX_PRIMES} primos; modelo tem {len(model.primes)}."
        )

    accepted: dict[tuple, Decomposition] = {}
    examined = 0
    for subset in _negative_definite_subsets(model):
        examined += 1
        solution = _orthogonality_solution(model, D, subset) if subset else ()
        if any(x < 0 for x in solution):
            continue
        N = {name: x for name, x in zip(subset, solution) if x != 0}
        P = D - model.combination(N)
        if any(model.q(P, prime) < 0 for prime in model.primes.values()):
            continue
        key = (P.coords, tuple(sorted(N.items())))
        if key not in accepted:
            accepted[key] = Decomposition(P=P, N_coeffs=N, rounds=0, diagnostics=_diagnostics(model, P))

    logger.debug("Oraculo: %d subconjuntos examinados, %d aceitos", examined, len(accepted))
    if not accepted:
        raise NoValidSubset("Nenhum suporte definido negativo valido; D fora de PE_model.")
    if len(accepted) > 1:
        raise MultipleDistinctDecompositions(
            f"{len(accepted)} decomposicoes distintas encontradas.",
            supports=[d.support for d in accepted.values()],
        )
    return next(iter(accepted.values()))


def agrees(first: Decomposition, second: Decomposition) -> bool:
    """Igualdade em (P, N, suporte); rodadas e trace sao ignorados."""
    return first.P == second.P and dict(first.N_coeffs) == dict(second.N_coeffs)


# ==========================================================================
# 4. VERIFICACAO
# ==========================================================================


def verify(model: HKModel, D: DivisorClass, dec: Decomposition) -> VerificationReport:
    """Checa as condicoes da decomposicao; falhas vao no relatorio, nunca como erro."""
    model.space.require(D)
    model.space.require(dec.P)
    checks: list[VerificationCheck] = []

    unknown = sorted(name for name in dec.N_coeffs if name not in model.primes)
    known = {name: c for name, c in dec.N_coeffs.items() if name in model.primes}

    reconstructed = dec.P + model.combination(known)
    sum_ok = not unknown and reconstructed == D
    checks.append(
        VerificationCheck(
            "sum_equals_input",
            sum_ok,
            "" if sum_ok else (f"primos desconhecidos: {unknown}" if unknown else "P + N != D"),
        )
    )

    non_positive = sorted(name for name, c in known.items() if c <= 0)
    checks.append(
        VerificationCheck(
            "coefficients_positive",
            not non_positive,
            f"coeficientes <= 0 em {non_positive}" if non_positive else "",
        )
    )

    support = sorted(known)
    support_gram = gram(model.space, [model.primes[name] for name in support])
    definite = is_negative_definite(support_gram)
    checks.append(
        VerificationCheck(
            "support_negative_definite",
            definite,
            "" if definite else f"Gram do suporte {support} nao e' definida negativa",
        )
    )

    not_orthogonal = [
        f"q(P, {name}) = {format_rational(model.q(dec.P, model.primes[name]))}"
        for name in support
        if model.q(dec.P, model.primes[name]) != 0
    ]
    checks.append(
        VerificationCheck("orthogonal_on_support", not not_orthogonal, "; ".join(not_orthogonal))
    )

    negative = [
        f"q(P, {name}) = {format_rational(model.q(dec.P, prime))}"
        for name, prime in model.primes.items()
        if model.q(dec.P, prime) < 0
    ]
    checks.append(VerificationCheck("nonnegative_on_primes", not negative, "; ".join(negative)))

    report = VerificationReport(
        checks=tuple(checks),
        q_P=model.q(dec.P),
        q_P_omega=model.q(dec.P, model.kahler),
    )
    if not report.passed:
        logger.info("Verificacao falhou: %s", report.failed())
    return report


# ==========================================================================
# 5. MINIMALIDADE E CERTIFICADOS
# ==========================================================================


def minimality_check(
    model: HKModel,
    D: DivisorClass,
    dec: Decomposition,
    n_prime: EffectiveExpression,
) -> bool:
    """
    N_D e' o menor efetivo com D - N_D em BK-barra: para todo N' >= 0 com
    D - N' no cone dual, N' >= N_D coeficiente a coeficiente. Retorno
    False sinaliza bug ou modelo invalido.

    Raises:
        PreconditionFailed: N' nao e' combinacao nao negativa de primos ou
            D - N' esta fora do cone dual.
    """
    if n_prime.positive_part is not None:
        raise PreconditionFailed("N' deve ser combinacao de primos, sem parte positiva.")
    problems = n_prime.violations(model)
    if problems:
        raise PreconditionFailed(f"N' invalido: {'; '.join(problems)}")

    rest = D - model.combination(n_prime.coefficients)
    verdict = in_dual_bk_cone(model, rest)
    if not verdict.member:
        raise PreconditionFailed(
            "D - N' fora do cone dual.",
            failed_conditions=[c.to_dict() for c in verdict.failed_conditions],
        )

    minimal = all(
        n_prime.coefficients.get(name, Fraction(0)) >= c for name, c in dec.N_coeffs.items()
    )
    if not minimal:
        logger.warning("Minimalidade violada: N'=%s, N_D=%s", n_prime.to_dict(), dec.to_dict()["N"])
    return minimal


def pe_witness(model: HKModel, D: DivisorClass) -> EffectiveExpression:
    """
    Certificado de D em PE_model: N_D + P_D com P_D no cone positivo
    fechado. Num modelo valido, D esta em PE_model sse a decomposicao
    existe com diagnosticos limpos.

    Raises:
        NotPseudoEffective: D fora de PE_model.
    """
    dec = decompose(model, D)
    if dec.diagnostics:
        raise NotPseudoEffective(
            "Parte positiva fora do cone positivo fechado; D fora de PE_model.",
            diagnostics=list(dec.diagnostics),
        )
    return EffectiveExpression(coefficients=dict(dec.N_coeffs), positive_part=dec.P)


def effective_positive_part(model: HKModel, d_expr: EffectiveExpression) -> EffectiveExpression:
    """
    Se D = sum d_E E >= 0 entao P_D = sum (d_E - n_E) E >= 0, isto e',
    N_D <= D coeficiente a coeficiente (lema de Zariski).
    """
    if d_expr.positive_part is not None:
        raise PreconditionFailed("D deve ser combinacao efetiva de primos, sem parte positiva.")
    problems = d_expr.violations(model)
    if problems:
        raise PreconditionFailed(f"Expressao de D invalida: {'; '.join(problems)}")

    dec = decompose(model, d_expr.to_class(model))
    coefficients: dict[str, Fraction] = {}
    for name in model.prime_names:
        value = d_expr.coefficients.get(name, Fraction(0)) - dec.N_coeffs.get(name, Fraction(0))
        if value < 0:
            raise InternalConsistencyFailure(
                f"N_D excede D em {name}: d - n = {format_rational(value)}."
            )
        if value:
            coefficients[name] = value

    result = EffectiveExpression(coefficients=coefficients)
    if result.to_class(model) != dec.P:
        raise InternalConsistencyFailure("Expressao efetiva de P_D nao reproduz P_D.")
    return result
