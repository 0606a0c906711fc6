"""
cls_service.py - Regime da dimensao D (Iitaka) a partir da parte positiva.

Apenas os extremos sao decididos pelos dados do reticulado:
  q(P_D) > 0  -> Maximal (kappa = dim X)
  P_D = 0     -> Zero (D suportado numa configuracao definida negativa)
O caso intermediario (P_D != 0, q(P_D) = 0) e' so um candidato a fibracao
Lagrangiana; nenhum valor de kappa e' calculado.
"""

from __future__ import annotations

from app.config.settings import logger
from app.errors import InternalConsistencyFailure
from app.features.zariski.zar_service import decompose
from app.models.lattice import DivisorClass, HKModel
from app.models.reports import ClassReport
from app.utils.formatters import format_rational

ZERO = "Zero"
NULL_CANDIDATE = "NullCandidate"
MAXIMAL = "Maximal"
INDETERMINATE = "Indeterminate"


def d_dimension_class(model: HKModel, D: DivisorClass) -> ClassReport:
    """
    Classifica D pelo regime de P_D. Erros da decomposicao sao propagados.

    Raises:
        InternalConsistencyFailure: q(P) > 0 com diagnosticos limpos mas
            q(P, omega) <= 0.
    """
    dec = decompose(model, D)
    qP = model.q(dec.P)
    pairing = model.q(dec.P, model.kahler)

    if qP < 0:
        regime = INDETERMINATE
    elif dec.P.is_zero():
        regime = ZERO
    elif qP > 0:
        regime = MAXIMAL
        if not dec.diagnostics and pairing <= 0:
            raise InternalConsistencyFailure(
                f"q(P) > 0 com q(P, omega) = {format_rational(pairing)} <= 0."
            )
    else:
        regime = NULL_CANDIDATE

    logger.info("Regime de D: %s (q(P)=%s)", regime, format_rational(qP))
    return ClassReport(regime=regime, qP=qP, kahler_pairing=pairing, decomposition=dec)
