import json
from fractions import Fraction
from pathlib import Path

import pytest

from virasoro.fields import FieldPolynomial, T, tt_ope
from virasoro.laurent import LaurentPoly
from virasoro.scalars import C, as_scalar
from virasoro.serialize import (FormatError, canonical_dumps, load_ope, ope_from_json,
                                ope_to_json, parse_expression, parse_scalar)

FIXTURES = Path(__file__).parent / "fixtures"


def test_parse_expression():
    assert parse_expression("w") == LaurentPoly.monomial(1, 1, "w")
    assert parse_expression("3*w**2 - w") == LaurentPoly({2: 3, 1: -1}, "w")
    assert parse_expression("c/2") == LaurentPoly({0: C / 2}, "w")
    assert parse_expression("w**-1 + 1/3") == LaurentPoly({-1: 1, 0: Fraction(1, 3)}, "w")
    assert parse_expression("0").is_zero()
    for bad in ("x", "w**(1/2)", "sin(w)", "c**-1", "w +"):
        with pytest.raises(FormatError):
            parse_expression(bad)


def test_parse_scalar():
    assert parse_scalar(3) == as_scalar(3)
    assert parse_scalar({"1": "1/2"}) == C / 2
    assert parse_scalar("c/2 + 1") == C / 2 + 1
    for bad in (True, "w", 1.5, {"1": "x"}):
        with pytest.raises(FormatError):
            parse_scalar(bad)


def test_ope_round_trip():
    ope = tt_ope()
    data = ope_to_json(ope)
    assert ope_from_json(data) == ope
    assert ope_from_json(json.loads(canonical_dumps(data))) == ope
    assert load_ope(FIXTURES / "tt_ope.json") == ope


def test_tampered_fixture_loads_but_differs():
    ope = load_ope(FIXTURES / "tt_ope_tampered.json")
    assert ope.singular[1] == FieldPolynomial.of(T).scale(3)
    assert ope != tt_ope()


def test_malformed_declarations():
    with pytest.raises(FormatError):
        ope_from_json({"fields": []})
    data = ope_to_json(tt_ope())
    data["singular"]["1"][0]["symbol"] = "U"
    with pytest.raises(FormatError):
        ope_from_json(data)
    data = ope_to_json(tt_ope())
    data["singular"]["0"][0]["derivative_order"] = 0
    with pytest.raises(ValueError):
        ope_from_json(data)
    assert ope_from_json(data, strict=False).weight_violations()


def test_canonical_dumps_orders_integer_keys_numerically():
    text = canonical_dumps({"b": 1, "10": 2, "2": 3, "a": Fraction(1, 3)})
    assert list(json.loads(text)) == ["2", "10", "a", "b"]
    assert json.loads(text)["a"] == "1/3"
    assert text.endswith("\n")
    assert canonical_dumps({"x": [C / 2]}) == canonical_dumps({"x": [C / 2]})
