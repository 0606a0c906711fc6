from fractions import Fraction

from hypothesis import given, settings, strategies as st

from app.features.classify.cls_service import (
    INDETERMINATE,
    MAXIMAL,
    NULL_CANDIDATE,
    ZERO,
    d_dimension_class,
)
from app.models.lattice import DivisorClass
from model_strategies import hk_models, pe_classes, positive_rationals


def test_maximal_regime(neg2_chain):
    report = d_dimension_class(neg2_chain, DivisorClass.of([Fraction(5, 2), Fraction(5, 2), 2]))
    assert report.regime == MAXIMAL
    assert report.qP == 6
    assert report.kahler_pairing == 8


def test_zero_regime(u_basic):
    report = d_dimension_class(u_basic, DivisorClass.of([1, -1]))
    assert report.regime == ZERO
    assert report.decomposition.N_coeffs == {"E": 1}


def test_null_candidate_regime(u_basic):
    report = d_dimension_class(u_basic, DivisorClass.of([0, 1]))
    assert report.regime == NULL_CANDIDATE
    assert report.qP == 0
    assert report.to_dict()["regime"] == "NullCandidate"


def test_null_candidate_on_fibre_configuration(a1_fiber):
    # E1 + 2 E2 = v + E2: parte positiva e' a fibra v
    report = d_dimension_class(a1_fiber, DivisorClass.of([0, 2, -1]))
    assert report.regime == NULL_CANDIDATE
    assert report.decomposition.P == DivisorClass.of([0, 1, 0])


def test_indeterminate_when_positive_part_has_negative_square(u_basic):
    report = d_dimension_class(u_basic, DivisorClass.of([-1, 1]))
    assert report.regime == INDETERMINATE
    assert report.decomposition.diagnostics == ("IncompleteModelSuspected",)


@settings(max_examples=200)
@given(st.data())
def test_regime_invariant_under_scaling(data):
    model = data.draw(hk_models())
    D, _, _ = data.draw(pe_classes(model))
    c = data.draw(positive_rationals)
    first = d_dimension_class(model, D)
    assert d_dimension_class(model, D * c).regime == first.regime
    assert first.regime != INDETERMINATE
    if first.regime == MAXIMAL:
        assert first.kahler_pairing > 0
    if first.regime == ZERO:
        assert first.decomposition.P == model.zero()
