"""
main.py - Ponto de entrada da CLI `hkz`.

Le argv, executa o comando e escreve o relatorio JSON em stdout (ou em
--output). Logs e o resumo do batch vao para stderr.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional, Sequence

from app.config.settings import logger
from app.errors import HKZError
from app.features.cli.cli_controller import RunResult, run
from app.features.cli.cli_routes import parse_request
from app.utils.formatters import dumps_report

# ---------------------------------------------------------------------------
# Saida
# ---------------------------------------------------------------------------


def _emit(result: RunResult, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(result.output + "\n", encoding="utf-8")
        logger.info("Relatorio gravado em %s", output)
    elif result.output:
        sys.stdout.write(result.output + "\n")
    if result.summary is not None:
        sys.stderr.write(result.summary + "\n")


# ---------------------------------------------------------------------------
# Entrada
# ---------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Executa `hkz` e retorna o exit code."""
    try:
        request = parse_request(argv)
    except HKZError as e:
        sys.stdout.write(dumps_report(e.to_dict()) + "\n")
        return e.exit_code

    result = run(request)
    _emit(result, request.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
