"""
Algebra linear racional exata.

Resolucao de sistemas simetricos, montagem de matrizes de Gram, inercia
(assinatura) por diagonalizacao de congruencia e testes de definicao.
Toda a aritmetica e' feita com Fraction; ponto flutuante nunca entra aqui,
porque os argumentos de sinal (q < 0 contra q = 0) precisam ser exatos.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple, Sequence

from app.errors import DimensionMismatch, SingularMatrix

if TYPE_CHECKING:
    from app.models.lattice import DivisorClass, QuadraticSpace


# ==========================================================================
# 1. TIPOS
# ==========================================================================


@dataclass(frozen=True)
class RatMatrix:
    """Matriz racional imutavel, armazenada por linhas."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(
                f"Matriz declarada {self.rows}x{self.cols} com entradas de outro formato."
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], cols: int | None = None) -> "RatMatrix":
        """Constroi a partir de listas de numeros (int, Fraction ou str 'p/q')."""
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def empty(cls) -> "RatMatrix":
        return cls(0, 0, ())

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def matvec(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"Vetor de tamanho {len(vector)} para matriz com {self.cols} colunas."
            )
        return tuple(
            sum((a * x for a, x in zip(row, vector)), Fraction(0)) for row in self.entries
        )

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]


class Inertia(NamedTuple):
    """Contagens (positivos, nulos, negativos) da lei de Sylvester."""

    n_plus: int
    n_zero: int
    n_minus: int


# ==========================================================================
# 2. OPERACOES
# ==========================================================================


def _require_symmetric(matrix: RatMatrix) -> None:
    if not matrix.is_square:
        raise DimensionMismatch(f"Matriz {matrix.rows}x{matrix.cols} nao e' quadrada.")
    if not matrix.is_symmetric():
        raise DimensionMismatch("Matriz nao e' simetrica.")


def solve_symmetric(gram: RatMatrix, rhs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """
    Resolve G.x = b exatamente por eliminacao gaussiana.
    O pivo de maior valor absoluto controla o tamanho dos racionais
    intermediarios (nao ha questao de estabilidade em aritmetica exata).

    Raises:
        SingularMatrix: G nao e' inversivel.
    """
    _require_symmetric(gram)
    n = gram.rows
    if len(rhs) != n:
        raise DimensionMismatch(f"Lado direito com {len(rhs)} entradas para sistema {n}x{n}.")

    # Matriz aumentada [G | b]
    aug = [list(gram.entries[i]) + [Fraction(rhs[i])] for i in range(n)]

    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if aug[pivot_row][col] == 0:
            raise SingularMatrix(f"Matriz singular: sem pivo na coluna {col}.")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]

        pivot = aug[col][col]
        for r in range(col + 1, n):
            factor = aug[r][col] / pivot
            if factor:
                for c in range(col, n + 1):
                    aug[r][c] -= factor * aug[col][c]

    # Substituicao reversa
    solution = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n] - sum((aug[i][j] * solution[j] for j in range(i + 1, n)), Fraction(0))
        solution[i] = acc / aug[i][i]
    return tuple(solution)


def inertia(gram: RatMatrix) -> Inertia:
    """
    Inercia por diagonalizacao de congruencia (Lagrange), nunca por
    autovalores em ponto flutuante.

    A cada passo o pivo e' a entrada diagonal nao nula de maior valor
    absoluto; se a diagonal restante e' toda zero mas ha entrada fora da
    diagonal a_ij != 0, soma-se a linha/coluna j a linha/coluna i, o que
    produz a_ii = 2 a_ij != 0. O complemento de Schur do pivo substitui
    o bloco restante.
    """
    _require_symmetric(gram)
    a = gram.to_lists()
    active = list(range(gram.rows))
    n_plus = n_minus = 0

    while active:
        pivot = max(active, key=lambda i: abs(a[i][i]))
        if a[pivot][pivot] == 0:
            pair = next(
                ((i, j) for i in active for j in active if i != j and a[i][j] != 0),
                None,
            )
            if pair is None:
                # Bloco restante e' identicamente nulo
                break
            i, j = pair
            for k in active:
                a[i][k] += a[j][k]
            for k in active:
                a[k][i] += a[k][j]
            pivot = i

        p = a[pivot][pivot]
        if p > 0:
            n_plus += 1
        else:
            n_minus += 1

        active.remove(pivot)
        for i in active:
            factor = a[i][pivot] / p
            if factor:
                for j in active:
                    a[i][j] -= factor * a[pivot][j]

    return Inertia(n_plus, len(active), n_minus)


def is_negative_definite(gram: RatMatrix) -> bool:
    """True sse inercia = (0, 0, dim). A matriz 0x0 e' vacuamente definida negativa."""
    _require_symmetric(gram)
    return inertia(gram) == Inertia(0, 0, gram.rows)


def gram(space: "QuadraticSpace", classes: Sequence["DivisorClass"]) -> RatMatrix:
    """Matriz (q(C_i, C_j))_{i,j}."""
    for cls in classes:
        space.require(cls)
    return RatMatrix(
        len(classes),
        len(classes),
        tuple(tuple(space.pair(ci, cj) for cj in classes) for ci in classes),
    )


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Posto de uma lista de vetores por escalonamento exato."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    result = 0
    for col in range(width):
        pivot_row = next((r for r in range(result, len(rows)) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[result], rows[pivot_row] = rows[pivot_row], rows[result]
        pivot = rows[result][col]
        for r in range(result + 1, len(rows)):
            factor = rows[r][col] / pivot
            if factor:
                for c in range(col, width):
                    rows[r][c] -= factor * rows[result][c]
        result += 1
    return result
