import json

import pytest

from curvetop.bpoly import IntPoly2
from curvetop.polyparse import DegreeTooLarge, ParseError, parse_poly, parse_terms_json, read_poly


def test_circle():
    assert parse_poly("x^2 + y^2 - 1") == IntPoly2.from_dict({(2, 0): 1, (0, 2): 1, (0, 0): -1})


def test_example_product():
    P = parse_poly("(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)")
    assert P.total_degree == 6
    assert P.eval_exact(1, 1) == (1 - 1) * (4 - 4 - 1) * (4 + 4 - 1)
    assert P.eval_exact(2, 3) == (6 - 1) * (36 - 8 - 1) * (36 + 8 - 1)


def test_unary_minus_and_case():
    assert parse_poly("-X^2 + -(-Y)") == IntPoly2.from_dict({(2, 0): -1, (0, 1): 1})
    assert parse_poly("2^3*x") == IntPoly2.from_dict({(1, 0): 8})


def test_big_integers():
    P = parse_poly("123456789012345678901234567890*x")
    assert P.to_dict() == {(1, 0): 123456789012345678901234567890}


@pytest.mark.parametrize("text, pos, msg", [
    ("x^2 + 0.5", 6, "non-integer"),
    ("2x", 1, "implicit"),
    ("x +", 3, "end"),
    ("(x + y", 6, "')'"),
    ("x ^ y", 4, "exponent"),
    ("x $ y", 2, "unexpected"),
    ("", 0, "empty"),
    ("x y", 2, "implicit"),
    ("x^-1", 2, "exponent"),
])
def test_errors_have_positions(text, pos, msg):
    with pytest.raises(ParseError) as e:
        parse_poly(text)
    assert e.value.pos == pos
    assert msg in str(e.value)


def test_degree_cap():
    with pytest.raises(DegreeTooLarge):
        parse_poly("x^100", max_degree=64)
    with pytest.raises(DegreeTooLarge):
        parse_poly("(x*y)^20*x^30", max_degree=64)
    assert parse_poly("x^64", max_degree=64).total_degree == 64


def test_json_terms():
    doc = {"terms": [[2, 0, "1"], [0, 2, "1"], [0, 0, "-1"]]}
    assert parse_terms_json(doc) == parse_poly("x^2+y^2-1")
    assert read_poly(json.dumps(doc)) == parse_poly("x^2+y^2-1")
    assert parse_terms_json({"terms": [[1, 0, 3], [1, 0, "-3"]]}).is_zero()


@pytest.mark.parametrize("doc", [
    "{not json",
    {"terms": 5},
    {"terms": [[1, 0]]},
    {"terms": [[1, -1, "2"]]},
    {"terms": [[1, 0, "0.5"]]},
    {"terms": [[1, 0, 0.5]]},
    {"terms": [[True, 0, "1"]]},
])
def test_json_errors(doc):
    with pytest.raises(ParseError):
        parse_terms_json(doc)


def test_json_degree_cap():
    with pytest.raises(DegreeTooLarge):
        parse_terms_json({"terms": [[40, 30, "1"]]}, max_degree=64)
