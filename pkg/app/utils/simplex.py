"""
Simplex exato em duas fases sobre Fraction, com a regra de Bland.

Forma padrao: minimizar c.x sujeito a A x = b, x >= 0.
A regra de Bland (menor indice entrando; empate na razao minima resolvido
pelo menor indice basico) garante terminacao sem ciclagem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from app.errors import DimensionMismatch

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    """
    status in {optimal, infeasible, unbounded}.
    Quando unbounded, `x` e' uma solucao basica viavel e `ray` uma direcao
    d >= 0 com A d = 0 e c.d < 0.
    """

    status: str
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    ray: Optional[tuple[Fraction, ...]] = None


class Tableau:
    """
    Tableau [B^-1 A | B^-1 b] com a linha de custos reduzidos em `costs`
    (ultima entrada = -valor objetivo).
    """

    def __init__(self, rows: list[list[Fraction]], basis: list[int]) -> None:
        self.rows = rows
        self.basis = basis
        self.costs: list[Fraction] = []

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def set_objective(self, c: Sequence[Fraction]) -> None:
        """Recalcula custos reduzidos c_j - c_B B^-1 A_j para a base atual."""
        costs = [Fraction(cj) for cj in c] + [Fraction(0)]
        for r, row in enumerate(self.rows):
            cb = Fraction(c[self.basis[r]]) if self.basis[r] < len(c) else Fraction(0)
            if cb:
                for j in range(len(costs)):
                    costs[j] -= cb * row[j]
        self.costs = costs

    def pivot(self, pivot_row: int, pivot_col: int) -> None:
        self.basis[pivot_row] = pivot_col
        row = self.rows[pivot_row]
        p = row[pivot_col]
        self.rows[pivot_row] = row = [v / p for v in row]
        for r, other in enumerate(self.rows):
            if r != pivot_row and other[pivot_col]:
                factor = other[pivot_col]
                self.rows[r] = [a - factor * b for a, b in zip(other, row)]
        if self.costs and self.costs[pivot_col]:
            factor = self.costs[pivot_col]
            self.costs = [a - factor * b for a, b in zip(self.costs, row)]

    def run(self, allowed: int) -> Optional[int]:
        """
        Itera ate o otimo; retorna None no otimo ou a coluna que entra sem
        linha de saida (problema ilimitado). So colunas < allowed entram.
        """
        while True:
            entering = next((j for j in range(allowed) if self.costs[j] < 0), None)
            if entering is None:
                return None
            candidates = [
                (row[-1] / row[entering], self.basis[r], r)
                for r, row in enumerate(self.rows)
                if row[entering] > 0
            ]
            if not candidates:
                return entering
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def solution(self, n: int) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        for r, j in enumerate(self.basis):
            if j < n:
                x[j] = self.rows[r][-1]
        return tuple(x)


def solve_lp(
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Optional[Sequence[Fraction]] = None,
) -> LPResult:
    """Minimiza c.x sujeito a A x = b, x >= 0 (c = 0: apenas viabilidade)."""
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m or any(len(row) != n for row in A):
        raise DimensionMismatch("Sistema linear com dimensoes inconsistentes.")
    c = [Fraction(0)] * n if c is None else [Fraction(v) for v in c]
    if len(c) != n:
        raise DimensionMismatch(f"Objetivo com {len(c)} entradas para {n} variaveis.")

    # Fase 1: b >= 0 e artificiais n..n+m-1 como base inicial
    rows: list[list[Fraction]] = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        rows.append(
            [sign * Fraction(v) for v in A[i]]
            + [Fraction(int(k == i)) for k in range(m)]
            + [sign * Fraction(b[i])]
        )
    tableau = Tableau(rows, [n + i for i in range(m)])
    tableau.set_objective([Fraction(0)] * n + [Fraction(1)] * m)
    tableau.run(allowed=n + m)
    if tableau.costs and -tableau.costs[-1] > 0:
        return LPResult(INFEASIBLE)

    # Retira artificiais de nivel zero da base; linhas sem pivo sao redundantes
    redundant: list[int] = []
    for r in range(m):
        if tableau.basis[r] >= n:
            col = next((j for j in range(n) if tableau.rows[r][j] != 0), None)
            if col is None:
                redundant.append(r)
            else:
                tableau.pivot(r, col)
    keep = [r for r in range(m) if r not in redundant]
    tableau = Tableau(
        [tableau.rows[r][:n] + [tableau.rows[r][-1]] for r in keep],
        [tableau.basis[r] for r in keep],
    )

    # Fase 2
    tableau.set_objective(c)
    entering = tableau.run(allowed=n)
    x = tableau.solution(n)
    if entering is not None:
        ray = [Fraction(0)] * n
        ray[entering] = Fraction(1)
        for r, j in enumerate(tableau.basis):
            ray[j] = -tableau.rows[r][entering]
        return LPResult(UNBOUNDED, x=x, ray=tuple(ray))
    value = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x=x, value=value)
