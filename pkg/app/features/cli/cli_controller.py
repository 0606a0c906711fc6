"""
cli_controller.py - Execucao dos comandos da CLI e montagem dos relatorios.

Coordena o fluxo entre:
- Resolucao do modelo (--model ou --catalog)
- Parsing dos operandos de classe
- Chamada da feature correspondente
- Conversao de erros em objetos JSON com exit code
- Batch concorrente com emissao na ordem de entrada
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Optional

from app.config.settings import BATCH_WORKERS, logger
from app.errors import (
    DimensionMismatch,
    HKZError,
    InternalConsistencyFailure,
    NotPseudoEffective,
    OracleMismatch,
    ParseError,
    UnknownCatalogName,
    UsageError,
)
from app.features.classify.cls_service import d_dimension_class
from app.features.cones.cone_extremal import (
    effective_null_representative,
    extremal_ray_test,
    in_pseudo_effective_cone,
)
from app.features.cones.cone_service import (
    in_closed_positive_cone,
    in_dual_bk_cone,
    in_positive_cone,
    null_pair_classify,
)
from app.features.model.mdl_catalog import catalog_model, catalog_names, load_catalog
from app.features.model.mdl_service import (
    load_model,
    parse_model,
    read_model_data,
    serialize_model,
    validate_model,
)
from app.features.zariski.zar_service import (
    agrees,
    decompose,
    decompose_bruteforce,
    pe_witness,
    verify,
)
from app.models.lattice import DivisorClass, HKModel
from app.models.reports import Decomposition
from app.utils.formatters import (
    clean_line,
    dumps_report,
    loads_strict,
    parse_class_csv,
    parse_rational,
    parse_vector,
)

COMMANDS = ("decompose", "verify", "cone", "classify", "extremal", "validate", "catalog", "batch")
BATCH_COMMANDS = ("decompose", "classify", "cone")


@dataclass(frozen=True)
class RunRequest:
    """Uma invocacao da CLI (ou uma linha de batch)."""

    command: str
    model_path: Optional[str] = None
    catalog: Optional[str] = None
    class_: Optional[str] = None
    class2: Optional[str] = None
    generators: Optional[str] = None
    decomposition: Optional[str] = None
    input: Optional[str] = None
    batch_command: str = "decompose"
    check_oracle: bool = False
    trace: bool = False
    pretty: bool = False
    output: Optional[str] = None


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    output: str
    summary: Optional[str] = None


# ==========================================================================
# 1. OPERANDOS
# ==========================================================================


def _resolve_model(request: RunRequest) -> HKModel:
    if request.model_path and request.catalog:
        raise UsageError("Use --model ou --catalog, nao ambos.")
    if request.model_path:
        return load_model(request.model_path)
    if request.catalog:
        return catalog_model(request.catalog)
    raise UsageError(f"'{request.command}' exige --model ou --catalog.")


def _class_operand(model: HKModel, text: Optional[str], flag: str) -> DivisorClass:
    if text is None:
        raise UsageError(f"Operando {flag} ausente.")
    try:
        return model.as_class(parse_class_csv(text))
    except DimensionMismatch as e:
        raise ParseError(f"{flag}: {e.detail}") from e


def _read_json(path: str, label: str) -> object:
    file_path = Path(path)
    if not file_path.exists():
        raise ParseError(f"Arquivo de {label} nao encontrado: {file_path}")
    try:
        return loads_strict(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"JSON invalido em {file_path}: {e}") from e


def _load_decomposition(model: HKModel, path: str) -> Decomposition:
    data = _read_json(path, "decomposicao")
    if not isinstance(data, dict) or "P" not in data or "N" not in data:
        raise ParseError("Decomposicao deve ter os campos 'P' e 'N'.")
    if not isinstance(data["N"], dict):
        raise ParseError("'N' deve ser um objeto nome -> coeficiente.")
    P = DivisorClass(parse_vector(data["P"], model.rank))
    N = {str(name): parse_rational(value) for name, value in data["N"].items()}
    return Decomposition(P=P, N_coeffs=N)


def _load_generators(path: str) -> list[DivisorClass]:
    data = _read_json(path, "geradores")
    if not isinstance(data, list):
        raise ParseError("Geradores devem ser uma lista de listas de coordenadas.")
    return [DivisorClass(parse_vector(row)) for row in data]


# ==========================================================================
# 2. COMANDOS
# ==========================================================================

Handler = Callable[[RunRequest, HKModel], tuple[int, dict]]


def _decompose(request: RunRequest, model: HKModel) -> tuple[int, dict]:
    D = _class_operand(model, request.class_, "--class")
    dec = decompose(model, D)
    payload = dec.to_dict(with_trace=request.trace)
    if request.check_oracle:
        try:
            oracle = decompose_bruteforce(model, D)
        except NotPseudoEffective as e:
            raise OracleMismatch(f"Oraculo rejeitou D: {e.detail}") from e
        if not agrees(dec, oracle):
            raise OracleMismatch(
                "Oraculo e decomposicao construtiva divergem.",
                constructive=dec.to_dict(),
                oracle=oracle.to_dict(),
            )
        payload["oracle_agrees"] = True
    return 0, payload


def _verify(request: RunRequest, model: HKModel) -> tuple[int, dict]:
    D = _class_operand(model, request.class_, "--class")
    if request.decomposition:
        report = verify(model, D, _load_decomposition(model, request.decomposition))
        return (0 if report.passed else 2), report.to_dict()

    report = verify(model, D, decompose(model, D))
    if not report.passed:
        raise InternalConsistencyFailure(
            "Decomposicao construtiva nao passou na verificacao.",
            failed=report.failed(),
        )
    return 0, report.to_dict()


def _cone(request: RunRequest, model: HKModel) -> tuple[int, dict]:
    L = _class_operand(model, request.class_, "--class")
    payload = {
        "positive": in_positive_cone(model, L).to_dict(),
        "closed_positive": in_closed_positive_cone(model, L).to_dict(),
        "dual_bk": in_dual_bk_cone(model, L).to_dict(),
        "pseudo_effective": in_pseudo_effective_cone(model, L).to_dict(),
    }
    if request.class2 is not None:
        D = _class_operand(model, request.class2, "--class2")
        payload["null_pair"] = null_pair_classify(model, L, D, pe_witness(model, D)).to_dict()
    return 0, payload


def _classify(request: RunRequest, model: HKModel) -> tuple[int, dict]:
    D = _class_operand(model, request.class_, "--class")
    return 0, d_dimension_class(model, D).to_dict()


def _extremal(request: RunRequest, model: HKModel) -> tuple[int, dict]:
    L = _class_operand(model, request.class_, "--class")
    if request.generators:
        generators = _load_generators(request.generators)
        labels = [str(i) for i in range(len(generators))]
    else:
        labels = model.prime_names
        generators = [model.primes[name] for name in labels]

    payload = {"generators": labels, **extremal_ray_test(generators, L).to_dict()}
    if request.class2 is not None:
        D = _class_operand(model, request.class2, "--class2")
        representative = effective_null_representative(
            model, L, pe_witness(model, D), pe_witness(model, L - D)
        )
        payload["null_representative"] = representative.to_dict()
    return 0, payload


_HANDLERS: dict[str, Handler] = {
    "decompose": _decompose,
    "verify": _verify,
    "cone": _cone,
    "classify": _classify,
    "extremal": _extremal,
}


def _validate(request: RunRequest) -> tuple[int, dict]:
    # Sem load_model: um modelo invalido ainda deve ser reportado
    if request.model_path and request.catalog:
        raise UsageError("Use --model ou --catalog, nao ambos.")
    if request.model_path:
        data, name = read_model_data(request.model_path)
    elif request.catalog:
        catalog = load_catalog()
        if request.catalog not in catalog:
            raise UnknownCatalogName(f"Modelo '{request.catalog}' nao existe no catalogo.")
        data, name = catalog[request.catalog], request.catalog
    else:
        raise UsageError("'validate' exige --model ou --catalog.")

    violations = validate_model(parse_model(data, name=name))
    payload = {"valid": not violations, "violations": [v.to_dict() for v in violations]}
    return (2 if violations else 0), payload


def _catalog(request: RunRequest) -> tuple[int, dict]:
    if request.catalog:
        return 0, {"name": request.catalog, "model": serialize_model(catalog_model(request.catalog))}
    return 0, {"models": catalog_names()}


# ==========================================================================
# 3. EXECUCAO
# ==========================================================================


def execute(request: RunRequest, model: Optional[HKModel] = None) -> tuple[int, dict]:
    """
    Executa um comando simples e retorna (exit code, relatorio).
    Nenhum erro escapa: todos viram {"error", "detail", ...}.
    """
    try:
        if request.command == "validate":
            return _validate(request)
        if request.command == "catalog":
            return _catalog(request)
        handler = _HANDLERS.get(request.command)
        if handler is None:
            raise UsageError(f"Comando desconhecido: {request.command}")
        return handler(request, model if model is not None else _resolve_model(request))
    except HKZError as e:
        if e.exit_code >= 3:
            logger.error("Falha de consistencia interna em '%s': %s", request.command, e.detail)
        return e.exit_code, e.to_dict()
    except Exception as e:
        logger.exception("Erro inesperado em '%s'", request.command)
        return InternalConsistencyFailure.exit_code, InternalConsistencyFailure(str(e)).to_dict()


def _batch(request: RunRequest) -> RunResult:
    """
    Um relatorio JSON por linha, na ordem de entrada. Linhas com erro
    produzem o objeto de erro sem abortar o batch; o exit code e' o
    maior entre as linhas.
    """
    if not request.input:
        raise UsageError("'batch' exige --input.")
    input_path = Path(request.input)
    if not input_path.exists():
        raise ParseError(f"Arquivo de batch nao encontrado: {input_path}")
    model = _resolve_model(request)

    lines = [
        line
        for line in (clean_line(raw) for raw in input_path.read_text(encoding="utf-8").splitlines())
        if line is not None
    ]
    line_requests = [replace(request, command=request.batch_command, class_=line) for line in lines]

    with ThreadPoolExecutor(max_workers=max(1, BATCH_WORKERS)) as executor:
        results = list(executor.map(lambda r: execute(r, model), line_requests))

    failed = sum(1 for code, _ in results if code != 0)
    logger.info("Batch concluido: %d linhas, %d com erro", len(results), failed)
    output = "\n".join(dumps_report(payload) for _, payload in results)
    return RunResult(
        exit_code=max((code for code, _ in results), default=0),
        output=output,
        summary=f"{len(results)} processed, {failed} failed",
    )


def run(request: RunRequest) -> RunResult:
    """Ponto unico de execucao da CLI: comando -> (exit code, JSON)."""
    if request.command == "batch":
        try:
            return _batch(request)
        except HKZError as e:
            return RunResult(e.exit_code, dumps_report(e.to_dict(), request.pretty))
    code, payload = execute(request)
    return RunResult(code, dumps_report(payload, request.pretty))
