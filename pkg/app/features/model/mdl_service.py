"""
mdl_service.py - Ingestao, validacao e serializacao de modelos HK.

Formato do arquivo de modelo (JSON, UTF-8):
    {
      "rank": 3,
      "gram": [["0","1","0"],["1","0","0"],["0","0","-2"]],
      "primes": { "E1": ["0","1","1"], "E2": ["1","-1","0"] },
      "kahler": ["1","2","-1"]
    }
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path
from typing import Union

from app.config.settings import logger
from app.errors import VIOLATION_ERRORS, DimensionMismatch, ParseError
from app.models.lattice import DivisorClass, HKModel, QuadraticSpace
from app.models.reports import Violation
from app.utils.formatters import format_rational, format_vector, loads_strict, parse_vector
from app.utils.ratlin import Inertia, RatMatrix, inertia

ModelSource = Union[str, Path, dict]


# ==========================================================================
# 1. PARSING
# ==========================================================================


def parse_model(data: dict, name: str | None = None) -> HKModel:
    """
    Converte o dicionario JSON em HKModel sem validar os invariantes
    geometricos (assinatura, pareamentos). Erros de formato viram ParseError.
    """
    if not isinstance(data, dict):
        raise ParseError("Modelo deve ser um objeto JSON.")

    missing = [key for key in ("rank", "gram", "primes", "kahler") if key not in data]
    if missing:
        raise ParseError(f"Campos ausentes no modelo: {', '.join(missing)}")

    rank = data["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise ParseError(f"'rank' deve ser inteiro positivo, recebido: {rank!r}")

    rows = data["gram"]
    if not isinstance(rows, list) or len(rows) != rank:
        raise ParseError(f"'gram' deve ter {rank} linhas.")
    gram = RatMatrix(rank, rank, tuple(parse_vector(row, rank) for row in rows))
    if not gram.is_symmetric():
        raise ParseError("'gram' nao e' simetrica.")

    raw_primes = data["primes"]
    if not isinstance(raw_primes, dict):
        raise ParseError("'primes' deve ser um objeto nome -> coordenadas.")
    primes = {
        str(prime_name): DivisorClass(parse_vector(coords, rank))
        for prime_name, coords in raw_primes.items()
    }
    kahler = DivisorClass(parse_vector(data["kahler"], rank))

    try:
        return HKModel(QuadraticSpace(rank, gram), primes, kahler, name=name)
    except DimensionMismatch as e:
        raise ParseError(e.detail) from e


def read_model_data(source: ModelSource) -> tuple[dict, str | None]:
    """Le o JSON cru do modelo (dicionario, texto ou caminho) e o nome sugerido."""
    if isinstance(source, dict):
        return source, None
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text, name = source, None
    else:
        path = Path(source)
        if not path.exists():
            raise ParseError(f"Arquivo de modelo nao encontrado: {path}")
        text, name = path.read_text(encoding="utf-8"), path.stem
    try:
        return loads_strict(text), name
    except json.JSONDecodeError as e:
        raise ParseError(f"JSON invalido no modelo: {e}") from e


def load_model(source: ModelSource) -> HKModel:
    """
    Carrega e valida um modelo (caminho, texto JSON ou dicionario).

    Raises:
        ParseError: formato invalido.
        ModelViolationError: subclasse da primeira violacao; o atributo
            `violations` do contexto lista todas.
    """
    data, name = read_model_data(source)
    model = parse_model(data, name=name)
    violations = validate_model(model)
    if violations:
        error_cls = VIOLATION_ERRORS[violations[0].kind]
        raise error_cls(
            f"Modelo invalido: {len(violations)} violacao(oes).",
            violations=[v.to_dict() for v in violations],
        )
    logger.info(
        "Modelo carregado: posto=%d, primos=%d, origem=%s",
        model.rank,
        len(model.primes),
        name or "texto",
    )
    return model


# ==========================================================================
# 2. VALIDACAO
# ==========================================================================


def validate_model(model: HKModel) -> list[Violation]:
    """
    Verifica todos os invariantes do HKModel e retorna uma entrada por
    violacao. Lista vazia sse o modelo e' valido.
    """
    violations: list[Violation] = []
    r = model.rank

    found = inertia(model.space.gram)
    if found != Inertia(1, 0, r - 1):
        violations.append(
            Violation(
                "SignatureViolation",
                f"inercia (n+, n0, n-) = ({found.n_plus}, {found.n_zero}, {found.n_minus}), "
                f"esperado (1, 0, {r - 1})",
            )
        )

    names = model.prime_names
    for prime_name in names:
        if model.primes[prime_name].is_zero():
            violations.append(Violation("ZeroPrime", "primo com classe nula", (prime_name,)))

    for a, b in itertools.combinations(names, 2):
        if model.primes[a] == model.primes[b]:
            violations.append(Violation("DuplicatePrime", "classes identicas", (a, b)))
            continue
        value = model.q(model.primes[a], model.primes[b])
        if value < 0:
            violations.append(
                Violation("PrimePairingViolation", f"q({a}, {b}) = {format_rational(value)} < 0", (a, b))
            )

    q_omega = model.q(model.kahler)
    if q_omega <= 0:
        violations.append(
            Violation("KahlerViolation", f"q(omega) = {format_rational(q_omega)} <= 0", ("omega",))
        )
    for prime_name in names:
        value = model.q(model.kahler, model.primes[prime_name])
        if value <= 0:
            violations.append(
                Violation(
                    "KahlerViolation",
                    f"q(omega, {prime_name}) = {format_rational(value)} <= 0",
                    (prime_name,),
                )
            )

    if violations:
        logger.warning("Modelo com %d violacao(oes): %s", len(violations), [v.kind for v in violations])
    return violations


# ==========================================================================
# 3. SERIALIZACAO
# ==========================================================================


def serialize_model(model: HKModel) -> dict:
    """Dicionario JSON do modelo, racionais em termos minimos."""
    return {
        "rank": model.rank,
        "gram": [format_vector(row) for row in model.space.gram.entries],
        "primes": {name: cls.to_list() for name, cls in model.primes.items()},
        "kahler": model.kahler.to_list(),
    }


def dump_model(model: HKModel) -> str:
    return json.dumps(serialize_model(model), ensure_ascii=False, indent=2)
