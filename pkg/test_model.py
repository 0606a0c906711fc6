import json
from fractions import Fraction

import pytest

from app.errors import (
    DuplicatePrime,
    KahlerViolation,
    ParseError,
    PrimePairingViolation,
    SignatureViolation,
    UnknownCatalogName,
)
from app.features.model.mdl_catalog import catalog_model, catalog_names, load_catalog
from app.features.model.mdl_service import (
    dump_model,
    load_model,
    parse_model,
    serialize_model,
    validate_model,
)
from app.models.lattice import DivisorClass
from app.utils.formatters import format_rational, parse_class_csv, parse_rational
from app.utils.ratlin import RatMatrix, gram

U_MODEL = {
    "rank": 2,
    "gram": [["0", "1"], ["1", "0"]],
    "primes": {"E": ["1", "-1"]},
    "kahler": ["1", "2"],
}


def _with(**changes):
    data = json.loads(json.dumps(U_MODEL))
    data.update(changes)
    return data


# ---------------------------------------------------------------------------
# Racionais
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [("1/2", Fraction(1, 2)), ("-3", Fraction(-3)), ("4/6", Fraction(2, 3)), ("+5", Fraction(5)), (7, Fraction(7))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize(
    "bad",
    ["1/0", "1.5", "x", "1 /2", "", True, 0.5, None, "1\n", "2/3\n", "١/٢", "１"],
)
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(4, 6)) == "2/3"
    assert format_rational(Fraction(-6, 3)) == "-2"
    assert format_rational(Fraction(0, 5)) == "0"


def test_parse_class_csv():
    assert parse_class_csv("5/2,5/2,2") == (Fraction(5, 2), Fraction(5, 2), Fraction(2))
    with pytest.raises(ParseError):
        parse_class_csv("1, 0")
    with pytest.raises(ParseError):
        parse_class_csv("1,x")


# ---------------------------------------------------------------------------
# load_model / validate_model
# ---------------------------------------------------------------------------


def test_load_valid_u_model():
    model = load_model(U_MODEL)
    E = model.primes["E"]
    assert model.q(E) == -2
    assert model.q(model.kahler) == 4
    assert model.q(model.kahler, E) == 1


def test_kahler_orthogonal_to_prime_is_rejected():
    with pytest.raises(KahlerViolation) as exc:
        load_model(_with(kahler=["1", "1"]))
    assert exc.value.context["violations"][0]["names"] == ["E"]


def test_negative_definite_gram_is_signature_violation():
    data = _with(gram=[["-2", "0"], ["0", "-2"]], primes={})
    with pytest.raises(SignatureViolation):
        load_model(data)


def test_validate_valid_model_is_empty(u_basic):
    assert validate_model(u_basic) == []


def test_validate_duplicate_primes():
    model = parse_model(_with(primes={"E1": ["1", "-1"], "E2": ["1", "-1"]}))
    kinds = [v.kind for v in validate_model(model)]
    assert kinds == ["DuplicatePrime"]
    with pytest.raises(DuplicatePrime):
        load_model(_with(primes={"E1": ["1", "-1"], "E2": ["1", "-1"]}))


def test_validate_negative_prime_pairing():
    data = {
        "rank": 3,
        "gram": [["2", "0", "0"], ["0", "-2", "-1"], ["0", "-1", "-2"]],
        "primes": {"E1": ["1", "2", "0"], "E2": ["1", "0", "2"]},
        "kahler": ["1", "0", "0"],
    }
    violations = validate_model(parse_model(data))
    assert [(v.kind, v.names) for v in violations] == [("PrimePairingViolation", ("E1", "E2"))]
    with pytest.raises(PrimePairingViolation):
        load_model(data)


def test_validate_zero_prime():
    kinds = [v.kind for v in validate_model(parse_model(_with(primes={"Z": ["0", "0"]})))]
    assert "ZeroPrime" in kinds


def test_validate_collects_every_violation():
    data = _with(gram=[["-2", "0"], ["0", "-2"]], kahler=["1", "1"])
    kinds = {v.kind for v in validate_model(parse_model(data))}
    assert {"SignatureViolation", "KahlerViolation"} <= kinds


@pytest.mark.parametrize(
    "data",
    [
        {"rank": 2},
        _with(gram=[["0", "1"], ["2", "0"]]),
        _with(gram=[["0", "1"]]),
        _with(primes={"E": ["1", "-1", "0"]}),
        _with(kahler=["1.0", "2"]),
        _with(rank=0),
        [1, 2],
    ],
)
def test_parse_errors(data):
    with pytest.raises(ParseError):
        parse_model(data)


def test_load_model_from_file_and_text(tmp_path):
    path = tmp_path / "u.json"
    path.write_text(json.dumps(U_MODEL), encoding="utf-8")
    assert load_model(str(path)) == load_model(json.dumps(U_MODEL))
    with pytest.raises(ParseError):
        load_model(str(tmp_path / "missing.json"))


def test_repeated_prime_name_is_parse_error(tmp_path):
    text = (
        '{"rank": 2, "gram": [["0", "1"], ["1", "0"]],'
        ' "primes": {"E": ["1", "-1"], "E": ["1", "-2"]}, "kahler": ["1", "2"]}'
    )
    with pytest.raises(ParseError, match="'E'"):
        load_model(text)
    path = tmp_path / "dup.json"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ParseError):
        load_model(str(path))


def test_primes_are_ordered_by_name():
    model = parse_model(
        {
            "rank": 3,
            "gram": [["0", "1", "0"], ["1", "0", "0"], ["0", "0", "-2"]],
            "primes": {"E2": ["1", "-1", "0"], "E1": ["0", "1", "1"]},
            "kahler": ["1", "2", "-1"],
        }
    )
    assert model.prime_names == ["E1", "E2"]


def test_dump_then_load_reproduces_model(neg2_chain):
    assert load_model(dump_model(neg2_chain)) == neg2_chain
    assert serialize_model(neg2_chain)["primes"] == {"E1": ["0", "1", "1"], "E2": ["1", "-1", "0"]}


# ---------------------------------------------------------------------------
# Catalogo
# ---------------------------------------------------------------------------


def test_catalog_names_sorted():
    names = catalog_names()
    assert names == sorted(names)
    assert {"U-basic", "U-neg2-chain", "no-primes", "U-A1-fiber"} <= set(names)


def test_catalog_u_basic(u_basic):
    assert u_basic.name == "U-basic"
    assert [u_basic.q(E) for E in u_basic.primes.values()] == [-2]


def test_catalog_neg2_chain_prime_gram(neg2_chain):
    assert gram(neg2_chain.space, list(neg2_chain.primes.values())) == RatMatrix.from_rows(
        [[-2, 1], [1, -2]]
    )


def test_catalog_with_repeated_name_is_parse_error(tmp_path, monkeypatch):
    path = tmp_path / "catalog.json"
    path.write_text('{"A": {}, "A": {}}', encoding="utf-8")
    monkeypatch.setattr("app.features.model.mdl_catalog.CATALOG_PATH", path)
    load_catalog.cache_clear()
    try:
        with pytest.raises(ParseError):
            load_catalog()
    finally:
        load_catalog.cache_clear()


def test_catalog_unknown_name():
    with pytest.raises(UnknownCatalogName):
        catalog_model("nonexistent")


def test_divisor_class_proportionality():
    v = DivisorClass.of([0, 1])
    assert (v * 3).proportionality_factor(v) == 3
    assert DivisorClass.of([1, 1]).proportionality_factor(v) is None
    assert DivisorClass.of([0, 0]).proportionality_factor(v) == 0
