"""
Tipos de dominio do modelo reticulado do grupo de Neron-Severi.

QuadraticSpace  - (NS_Q(X), q) de posto r e assinatura (1, r-1)
DivisorClass    - vetor de coordenadas racionais na base fixa
HKModel         - espaco + primos nomeados + classe de Kahler distinguida
EffectiveExpression - certificado de pertinencia a PE_model
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from app.errors import DimensionMismatch
from app.utils.formatters import format_rational, format_vector
from app.utils.ratlin import RatMatrix


@dataclass(frozen=True)
class DivisorClass:
    """Classe racional; a aritmetica e' coordenada a coordenada."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable[object]) -> "DivisorClass":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls((Fraction(0),) * rank)

    def __len__(self) -> int:
        return len(self.coords)

    def _check(self, other: "DivisorClass") -> None:
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(
                f"Classes de tamanhos diferentes: {len(self.coords)} e {len(other.coords)}."
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, scalar: object) -> "DivisorClass":
        t = Fraction(scalar)
        return DivisorClass(tuple(t * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, scalar: object) -> "DivisorClass":
        return self * (1 / Fraction(scalar))

    def __neg__(self) -> "DivisorClass":
        return self * -1

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def proportionality_factor(self, other: "DivisorClass") -> Optional[Fraction]:
        """
        Retorna c com self = c * other, ou None se nao forem proporcionais.
        `other` deve ser nao nulo.
        """
        self._check(other)
        pivot = next(i for i, b in enumerate(other.coords) if b != 0)
        factor = self.coords[pivot] / other.coords[pivot]
        if all(a == factor * b for a, b in zip(self.coords, other.coords)):
            return factor
        return None

    def to_list(self) -> list[str]:
        return format_vector(self.coords)


@dataclass(frozen=True)
class QuadraticSpace:
    """Espaco quadratico racional; q(x, y) = x^T G y."""

    rank: int
    gram: RatMatrix

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise DimensionMismatch(f"Posto deve ser positivo, recebido {self.rank}.")
        if self.gram.rows != self.rank or self.gram.cols != self.rank:
            raise DimensionMismatch(
                f"Gram {self.gram.rows}x{self.gram.cols} para posto {self.rank}."
            )
        if not self.gram.is_symmetric():
            raise DimensionMismatch("Matriz de Gram nao e' simetrica.")

    def require(self, cls: DivisorClass) -> None:
        if len(cls.coords) != self.rank:
            raise DimensionMismatch(
                f"Classe com {len(cls.coords)} coordenadas num espaco de posto {self.rank}."
            )

    def pair(self, x: DivisorClass, y: DivisorClass) -> Fraction:
        self.require(x)
        self.require(y)
        gy = self.gram.matvec(y.coords)
        return sum((a * b for a, b in zip(x.coords, gy)), Fraction(0))


@dataclass(frozen=True)
class HKModel:
    """
    Modelo finito de (X, {divisores primos}, omega).
    Os primos sao mantidos em ordem lexicografica de nome.
    """

    space: QuadraticSpace
    primes: Mapping[str, DivisorClass]
    kahler: DivisorClass
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for cls in self.primes.values():
            self.space.require(cls)
        self.space.require(self.kahler)
        ordered = {key: self.primes[key] for key in sorted(self.primes)}
        object.__setattr__(self, "primes", ordered)

    @property
    def rank(self) -> int:
        return self.space.rank

    @property
    def prime_names(self) -> list[str]:
        return list(self.primes)

    def q(self, x: DivisorClass, y: Optional[DivisorClass] = None) -> Fraction:
        """q(x) ou q(x, y)."""
        return self.space.pair(x, x if y is None else y)

    def zero(self) -> DivisorClass:
        return DivisorClass.zero(self.rank)

    def combination(self, coefficients: Mapping[str, Fraction]) -> DivisorClass:
        """Soma sum c_E * E sobre os primos nomeados."""
        total = self.zero()
        for name, coefficient in coefficients.items():
            total = total + self.primes[name] * coefficient
        return total

    def as_class(self, values: Iterable[object]) -> DivisorClass:
        cls = DivisorClass.of(values)
        self.space.require(cls)
        return cls


@dataclass(frozen=True)
class EffectiveExpression:
    """
    sum c_E * E + positive_part, com c_E >= 0 e positive_part no cone
    positivo fechado. Modela um elemento de PE_model = cone(primos) + C-barra.
    """

    coefficients: Mapping[str, Fraction] = field(default_factory=dict)
    positive_part: Optional[DivisorClass] = None

    def to_class(self, model: HKModel) -> DivisorClass:
        total = model.combination(self.coefficients)
        if self.positive_part is not None:
            total = total + self.positive_part
        return total

    def violations(self, model: HKModel) -> list[str]:
        """Lista textual das condicoes violadas (vazia se valida)."""
        problems: list[str] = []
        for name, coefficient in self.coefficients.items():
            if name not in model.primes:
                problems.append(f"primo desconhecido: {name}")
            elif coefficient < 0:
                problems.append(f"coeficiente negativo em {name}: {format_rational(coefficient)}")
        if self.positive_part is not None:
            model.space.require(self.positive_part)
            q_pos = model.q(self.positive_part)
            q_omega = model.q(self.positive_part, model.kahler)
            if q_pos < 0:
                problems.append(f"q(positive_part) = {format_rational(q_pos)} < 0")
            if q_omega < 0:
                problems.append(f"q(positive_part, omega) = {format_rational(q_omega)} < 0")
        return problems

    def to_dict(self) -> dict:
        return {
            "coefficients": {
                name: format_rational(self.coefficients[name]) for name in sorted(self.coefficients)
            },
            "positive_part": self.positive_part.to_list() if self.positive_part is not None else None,
        }
