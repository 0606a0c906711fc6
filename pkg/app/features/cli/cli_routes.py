"""
cli_routes.py - Comandos e flags da linha de comando `hkz`.

Comandos:
  decompose  --class D [--check-oracle] [--trace]  - Decomposicao de Zariski q
  verify     --class D [--decomposition path]      - Verifica uma decomposicao
  cone       --class L [--class2 D]                - Pertinencia aos cones / par nulo
  classify   --class D                             - Regime da dimensao D
  extremal   --class L [--generators path] [--class2 D]
                                                   - Raio extremal / representante efetivo
  validate                                         - Invariantes do modelo
  catalog    [--catalog name]                      - Lista ou imprime modelos embutidos
  batch      --input path [--command cmd]          - Um relatorio por linha
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from app.errors import UsageError
from app.features.cli.cli_controller import BATCH_COMMANDS, COMMANDS, RunRequest


class HKZArgumentParser(argparse.ArgumentParser):
    """argparse sai com status 2; na CLI erro de uso e' exit 1 em JSON."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> HKZArgumentParser:
    parser = HKZArgumentParser(
        prog="hkz",
        description="Decomposicao de Zariski q exata em modelos de reticulado HyperKahler.",
    )
    parser.add_argument("command", choices=COMMANDS, help="Operacao a executar")

    source = parser.add_argument_group("modelo")
    source.add_argument("--model", help="Caminho do arquivo JSON do modelo")
    source.add_argument("--catalog", help="Nome de um modelo embutido")

    operands = parser.add_argument_group("operandos")
    operands.add_argument("--class", dest="class_", help="Classe, ex.: 5/2,5/2,2")
    operands.add_argument("--class2", help="Segundo operando (par nulo / representante)")
    operands.add_argument("--generators", help="JSON com lista de geradores")
    operands.add_argument("--decomposition", help="JSON de uma decomposicao a verificar")
    operands.add_argument("--input", help="Arquivo do batch, uma classe por linha")
    operands.add_argument(
        "--command",
        dest="batch_command",
        choices=BATCH_COMMANDS,
        default="decompose",
        help="Comando aplicado a cada linha do batch (padrao: decompose)",
    )

    options = parser.add_argument_group("opcoes")
    options.add_argument("--check-oracle", action="store_true", help="Confere com o oraculo de forca bruta")
    options.add_argument("--trace", action="store_true", help="Inclui as classes intermediarias")
    options.add_argument("--pretty", action="store_true", help="JSON indentado")
    options.add_argument("--output", help="Grava o relatorio neste arquivo")
    return parser


CLASS_FLAGS = ("--class", "--class2")


def _attach_class_operands(argv: Sequence[str]) -> list[str]:
    """
    Junta `--class -1,2` em `--class=-1,2`: o argparse le um operando que
    comeca com '-' como flag.
    """
    joined: list[str] = []
    items = iter(argv)
    for item in items:
        if item in CLASS_FLAGS:
            value = next(items, None)
            if value is None:
                raise UsageError(f"argument {item}: expected one argument")
            joined.append(f"{item}={value}")
        else:
            joined.append(item)
    return joined


def parse_request(argv: Optional[Sequence[str]] = None) -> RunRequest:
    """
    Converte argv em RunRequest.

    Raises:
        UsageError: comando ou flag invalidos.
    """
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_attach_class_operands(argv))
    return RunRequest(
        command=args.command,
        model_path=args.model,
        catalog=args.catalog,
        class_=args.class_,
        class2=args.class2,
        generators=args.generators,
        decomposition=args.decomposition,
        input=args.input,
        batch_command=args.batch_command,
        check_oracle=args.check_oracle,
        trace=args.trace,
        pretty=args.pretty,
        output=args.output,
    )
