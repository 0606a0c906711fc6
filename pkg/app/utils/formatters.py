"""
Funcoes de parsing e formatacao de racionais exatos e de relatorios JSON.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable, Optional

from app.errors import ParseError


# ---------------------------------------------------------------------------
# Racionais
# ---------------------------------------------------------------------------

# "p/q" ou "p", sem espacos, so digitos ASCII; q positivo
_RE_RATIONAL = re.compile(r"([+-]?\d+)(?:/(\d+))?", re.ASCII)


def parse_rational(value: object) -> Fraction:
    """
    Converte "p/q" ou "p" em Fraction exata.
    Inteiros JSON tambem sao aceitos; floats nunca.
    """
    if isinstance(value, bool):
        raise ParseError(f"Valor booleano nao e' um racional: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"Racional deve ser string 'p/q' ou 'p': {value!r}")

    match = _RE_RATIONAL.fullmatch(value)
    if not match:
        raise ParseError(f"Racional mal formado: {value!r}")

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"Denominador zero: {value!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Formata em termos minimos: '1/2', '-3', '0'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_vector(values: object, length: Optional[int] = None) -> tuple[Fraction, ...]:
    """Converte uma lista JSON de racionais em tupla de Fractions."""
    if not isinstance(values, list):
        raise ParseError(f"Esperada lista de racionais, recebido: {values!r}")
    vector = tuple(parse_rational(v) for v in values)
    if length is not None and len(vector) != length:
        raise ParseError(
            f"Vetor com {len(vector)} coordenadas, esperado {length}: {values!r}"
        )
    return vector


def format_vector(values: Iterable[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]


def parse_class_csv(text: str) -> tuple[Fraction, ...]:
    """
    Converte o operando de linha de comando "5/2,5/2,2" em coordenadas.
    Espacos nao sao permitidos.
    """
    if not text or any(ch.isspace() for ch in text):
        raise ParseError(f"Classe deve ser racionais separados por virgula, sem espacos: {text!r}")
    return tuple(parse_rational(part) for part in text.split(","))


def clean_line(line: str) -> Optional[str]:
    """Retorna a linha limpa ou None para linhas vazias e comentarios '#'."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    return stripped


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _reject_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict:
    data: dict = {}
    for key, value in pairs:
        if key in data:
            raise ParseError(f"Chave repetida no JSON: {key!r}")
        data[key] = value
    return data


def loads_strict(text: str) -> Any:
    """
    json.loads que recusa chaves repetidas num mesmo objeto.

    Raises:
        ParseError: chave repetida.
        json.JSONDecodeError: texto que nao e' JSON.
    """
    return json.loads(text, object_pairs_hook=_reject_duplicate_keys)


def dumps_report(payload: Any, pretty: bool = False) -> str:
    """
    Serializa um relatorio para JSON deterministico.
    A ordem das chaves e' a de construcao dos dicionarios (estavel).
    """
    if pretty:
        return json.dumps(payload, ensure_ascii=False, indent=2)
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))
