"""
mdl_catalog.py - Catalogo de modelos embutidos.

Os modelos ficam em config/catalog_models.json, no mesmo formato dos
arquivos de modelo, e sao validados ao serem carregados.
"""

from __future__ import annotations

import json
from functools import lru_cache

from app.config.settings import CATALOG_PATH, logger
from app.errors import ParseError, UnknownCatalogName
from app.features.model.mdl_service import load_model
from app.models.lattice import HKModel
from app.utils.formatters import loads_strict


@lru_cache(maxsize=1)
def load_catalog() -> dict[str, dict]:
    """Carrega os modelos crus do arquivo de catalogo."""
    if not CATALOG_PATH.exists():
        logger.warning("Catalogo nao encontrado em: %s", CATALOG_PATH)
        return {}
    try:
        with open(CATALOG_PATH, "r", encoding="utf-8") as f:
            catalog = loads_strict(f.read())
    except json.JSONDecodeError as e:
        logger.error("Erro ao carregar catalogo em %s: %s", CATALOG_PATH, e)
        raise ParseError(f"Catalogo com JSON invalido: {e}") from e
    logger.info("Catalogo carregado com sucesso: %d modelos.", len(catalog))
    return catalog


def catalog_names() -> list[str]:
    return sorted(load_catalog())


def catalog_model(name: str) -> HKModel:
    """
    Retorna o modelo embutido `name`, ja validado.

    Raises:
        UnknownCatalogName: nome fora do catalogo.
    """
    catalog = load_catalog()
    if name not in catalog:
        raise UnknownCatalogName(
            f"Modelo '{name}' nao existe no catalogo. Disponiveis: {', '.join(catalog_names())}"
        )
    model = load_model(catalog[name])
    return HKModel(model.space, model.primes, model.kahler, name=name)
