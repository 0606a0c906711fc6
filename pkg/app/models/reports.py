"""
Relatorios estruturados devolvidos pelas features.
Todos serializam com to_dict() para o JSON deterministico da CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from app.models.lattice import DivisorClass
from app.utils.formatters import format_rational

INCOMPLETE_MODEL = "IncompleteModelSuspected"


def _rational_map(values: Mapping[str, Fraction]) -> dict[str, str]:
    return {name: format_rational(values[name]) for name in sorted(values)}


# ---------------------------------------------------------------------------
# Modelo
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """Uma violacao de invariante do HKModel (dado, nao erro)."""

    kind: str
    detail: str
    names: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "names": list(self.names), "detail": self.detail}


# ---------------------------------------------------------------------------
# Decomposicao
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """D = P + sum N_coeffs[E] * E, com suporte definido negativo."""

    P: DivisorClass
    N_coeffs: Mapping[str, Fraction]
    rounds: int = 0
    diagnostics: tuple[str, ...] = ()
    trace: tuple[DivisorClass, ...] = field(default=(), compare=False)

    @property
    def support(self) -> list[str]:
        return sorted(name for name, c in self.N_coeffs.items() if c > 0)

    def to_dict(self, with_trace: bool = False) -> dict:
        payload = {
            "P": self.P.to_list(),
            "N": _rational_map(self.N_coeffs),
            "rounds": self.rounds,
            "diagnostics": list(self.diagnostics),
        }
        if with_trace:
            payload["trace"] = [step.to_list() for step in self.trace]
        return payload


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    """Resultado das tres condicoes da decomposicao + diagnosticos."""

    checks: tuple[VerificationCheck, ...]
    q_P: Fraction
    q_P_omega: Fraction

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def diagnostics(self) -> list[str]:
        if self.q_P < 0 or self.q_P_omega < 0:
            return [INCOMPLETE_MODEL]
        return []

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "q_P": format_rational(self.q_P),
            "q_P_omega": format_rational(self.q_P_omega),
            "diagnostics": self.diagnostics,
        }


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Inequality:
    """Uma desigualdade nomeada com o valor exato calculado."""

    name: str
    value: Optional[Fraction] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": format_rational(self.value) if self.value is not None else None,
        }


@dataclass(frozen=True)
class ConeVerdict:
    cone: str
    failed_conditions: tuple[Inequality, ...] = ()

    @property
    def member(self) -> bool:
        return not self.failed_conditions

    def to_dict(self) -> dict:
        return {
            "cone": self.cone,
            "member": self.member,
            "failed_conditions": [c.to_dict() for c in self.failed_conditions],
        }


@dataclass(frozen=True)
class ExtremalityResult:
    """verdict in {Extremal, NotExtremal}; witness so quando NotExtremal."""

    verdict: str
    witness: Optional[tuple[Fraction, ...]] = None

    @property
    def extremal(self) -> bool:
        return self.verdict == "Extremal"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": [format_rational(x) for x in self.witness] if self.witness is not None else None,
        }


@dataclass(frozen=True)
class NullPairResult:
    """kind in {Parallel, NegativeSquare}; factor c com D = c * L quando Parallel."""

    kind: str
    q_D: Fraction
    factor: Optional[Fraction] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "factor": format_rational(self.factor) if self.factor is not None else None,
            "q_D": format_rational(self.q_D),
        }


@dataclass(frozen=True)
class NullRepresentative:
    """M = (N_D + N_G) / (1 - b - g), combinacao nao negativa de primos igual a L."""

    M: DivisorClass
    coefficients: Mapping[str, Fraction]
    b: Fraction
    g: Fraction

    def to_dict(self) -> dict:
        return {
            "M": self.M.to_list(),
            "coefficients": _rational_map(self.coefficients),
            "b": format_rational(self.b),
            "g": format_rational(self.g),
        }


# ---------------------------------------------------------------------------
# Classificacao
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    """regime in {Zero, NullCandidate, Maximal, Indeterminate}."""

    regime: str
    qP: Fraction
    kahler_pairing: Fraction
    decomposition: Decomposition

    def to_dict(self) -> dict:
        return {
            "regime": self.regime,
            "qP": format_rational(self.qP),
            "kahler_pairing": format_rational(self.kahler_pairing),
            "decomposition": self.decomposition.to_dict(),
        }
