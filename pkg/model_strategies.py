"""
Estrategias hypothesis para os testes de propriedade.

Modelos aleatorios validos sobre U(c) (+) T^t.diag(-a).T: o bloco
hiperbolico [[0, c], [c, 0]] com c racional e uma parte negativa definida
nao diagonal (T triangular superior unipotente com entradas racionais).
Posto ate 6, ate 8 primos escolhidos gulosamente de forma que
q(omega, E) > 0 e q(E_i, E_j) >= 0. Classes pseudo-efetivas sao montadas
como sum a_E E + P0 com P0 no cone positivo fechado.
"""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from app.models.lattice import DivisorClass, EffectiveExpression, HKModel, QuadraticSpace
from app.utils.ratlin import RatMatrix

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
positive_rationals = st.builds(Fraction, st.integers(1, 6), st.integers(1, 4))
unit_fractions = st.builds(Fraction, st.integers(0, 4), st.just(4))

_COORDS = st.sampled_from([Fraction(x) for x in (-2, -1, 0, 0, 0, 1, 2)] + [Fraction(-1, 2), Fraction(1, 2)])
_SHEAR = st.sampled_from([Fraction(0), Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)])
_DEPTH = st.sampled_from([Fraction(1), Fraction(2), Fraction(3), Fraction(4), Fraction(1, 2), Fraction(3, 2)])
_HYPERBOLIC = st.sampled_from([Fraction(1), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3)])


@st.composite
def lattice_grams(draw, max_rank: int = 6, min_rank: int = 2) -> RatMatrix:
    """Gram de assinatura (1, r - 1): U(c) (+) T^t.diag(-a).T."""
    r = draw(st.integers(min_rank, max_rank))
    n = r - 2
    c = draw(_HYPERBOLIC)
    depths = [draw(_DEPTH) for _ in range(n)]
    T = [[Fraction(int(i == j)) if j <= i else draw(_SHEAR) for j in range(n)] for i in range(n)]
    tail = [
        [sum((-depths[k] * T[k][i] * T[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]
    rows = [[Fraction(0)] * r for _ in range(r)]
    rows[0][1] = rows[1][0] = c
    for i in range(n):
        for j in range(n):
            rows[2 + i][2 + j] = tail[i][j]
    return RatMatrix.from_rows(rows)


def _greedy_primes(
    space: QuadraticSpace,
    kahler: DivisorClass,
    candidates: list[DivisorClass],
    primes: dict[str, DivisorClass],
    max_primes: int,
    extra_ok=lambda E: True,
) -> dict[str, DivisorClass]:
    for E in candidates:
        if len(primes) >= max_primes:
            break
        if E.is_zero() or E in primes.values():
            continue
        if space.pair(kahler, E) <= 0 or not extra_ok(E):
            continue
        if any(space.pair(E, F) < 0 for F in primes.values()):
            continue
        primes[f"E{len(primes) + 1}"] = E
    return primes


@st.composite
def hk_models(draw, max_rank: int = 6, max_primes: int = 8) -> HKModel:
    space_gram = draw(lattice_grams(max_rank))
    r = space_gram.rows
    space = QuadraticSpace(r, space_gram)

    s, t = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    kahler = DivisorClass.of([s, t] + [draw(st.integers(-1, 1)) for _ in range(r - 2)])
    if space.pair(kahler, kahler) <= 0:
        kahler = DivisorClass.of([s, t] + [0] * (r - 2))

    candidates = [
        DivisorClass(tuple(draw(st.lists(_COORDS, min_size=r, max_size=r))))
        for _ in range(draw(st.integers(1, 16)))
    ]
    primes = _greedy_primes(space, kahler, candidates, {}, max_primes)
    return HKModel(space, primes, kahler)


@st.composite
def closed_cone_classes(draw, model: HKModel) -> DivisorClass:
    """Elemento de C-barra: multiplo de omega, classe nula de U, zero ou candidato filtrado."""
    r = model.rank
    kind = draw(st.sampled_from(["omega", "u", "v", "zero", "random"]))
    scale = draw(positive_rationals)
    if kind == "omega":
        return model.kahler * scale
    if kind == "u":
        return DivisorClass.of([1] + [0] * (r - 1)) * scale
    if kind == "v":
        return DivisorClass.of([0, 1] + [0] * (r - 2)) * scale
    if kind == "zero":
        return model.zero()
    y = DivisorClass.of(draw(st.lists(st.integers(-3, 3), min_size=r, max_size=r)))
    if model.q(y) >= 0 and model.q(y, model.kahler) >= 0:
        return y
    return model.kahler * scale


@st.composite
def pe_classes(draw, model: HKModel) -> tuple[DivisorClass, dict[str, Fraction], DivisorClass]:
    """(D, coeficientes efetivos, P0) com D = sum a_E E + P0."""
    coefficients = {
        name: Fraction(draw(st.integers(0, 4)), draw(st.integers(1, 3)))
        for name in model.prime_names
    }
    P0 = draw(closed_cone_classes(model))
    return model.combination(coefficients) + P0, coefficients, P0


@st.composite
def arbitrary_classes(draw, model: HKModel) -> DivisorClass:
    return DivisorClass(tuple(draw(st.lists(small_rationals, min_size=model.rank, max_size=model.rank))))


@st.composite
def null_pair_operands(draw, model: HKModel) -> tuple[DivisorClass, DivisorClass]:
    """(L, D) com 0 != L em C-barra e q(L, D) = 0; D e' y projetado ao longo de omega."""
    L = draw(closed_cone_classes(model))
    if L.is_zero():
        L = model.kahler
    y = draw(arbitrary_classes(model))
    D = y - model.kahler * (model.q(L, y) / model.q(L, model.kahler))
    return L, D


@st.composite
def fibre_splittings(draw) -> tuple[HKModel, DivisorClass, EffectiveExpression, EffectiveExpression]:
    """
    (modelo, L, D, G) com L = E1 + E2 uma fibra nula: E1 = (0, c1, x),
    E2 = (0, c2, -x), x != 0 na parte negativa. D + G = L, ambos efetivos
    e nenhum proporcional a L (coeficientes distintos em E1 e E2).
    """
    space_gram = draw(lattice_grams(min_rank=3))
    r = space_gram.rows
    space = QuadraticSpace(r, space_gram)
    kahler = DivisorClass.of([draw(st.integers(1, 3)), draw(st.integers(1, 3))] + [0] * (r - 2))

    x = draw(st.lists(_COORDS, min_size=r - 2, max_size=r - 2).filter(any))
    c1, c2 = draw(positive_rationals), draw(positive_rationals)
    E1 = DivisorClass((Fraction(0), c1, *x))
    E2 = DivisorClass((Fraction(0), c2, *(-v for v in x)))
    L = E1 + E2

    candidates = [
        DivisorClass(tuple(draw(st.lists(_COORDS, min_size=r, max_size=r))))
        for _ in range(draw(st.integers(0, 6)))
    ]
    primes = _greedy_primes(
        space, kahler, candidates, {"E1": E1, "E2": E2}, 6, extra_ok=lambda E: space.pair(L, E) >= 0
    )
    model = HKModel(space, primes, kahler)

    a1 = draw(unit_fractions)
    a2 = draw(unit_fractions.filter(lambda a: a != a1))
    b, g = draw(unit_fractions), draw(unit_fractions)
    if b + g >= 1:
        b, g = b / 4, g / 4
    weight = 1 - b - g
    D_expr = EffectiveExpression(
        {"E1": weight * a1, "E2": weight * a2}, positive_part=L * b if b else None
    )
    G_expr = EffectiveExpression(
        {"E1": weight * (1 - a1), "E2": weight * (1 - a2)}, positive_part=L * g if g else None
    )
    return model, L, D_expr, G_expr
