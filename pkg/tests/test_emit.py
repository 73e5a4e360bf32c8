import json
from fractions import Fraction

import pytest

from curvetop.emit import UnsupportedFormat, emit, to_dict
from curvetop.polyparse import parse_poly
from curvetop.topo import analyze


def top(expr):
    return analyze(parse_poly(expr))


def test_schema_keys():
    doc = json.loads(emit(top("x^2+y^2-1"), "json"))
    assert set(doc) == {"n_special", "fibers", "between", "list", "graph", "components",
                        "euler_characteristic"}
    f = doc["fibers"][0]
    assert set(f) == {"alpha", "m", "crit", "left", "right", "vline"}
    assert f["alpha"] == ["-1", "-1"]
    assert doc["between"][1] == {"count": 2, "vlines": 0}
    assert doc["components"] == 1
    assert all(len(v) == 4 for v in doc["graph"]["vertices"])


def test_irrational_alpha_is_a_dyadic_enclosure():
    doc = to_dict(top("y^2 - x^2 + 2"))
    for f in doc["fibers"]:
        lo, hi = (Fraction(v) for v in f["alpha"])
        assert lo < hi and lo.denominator & (lo.denominator - 1) == 0
        # the enclosure brackets +-sqrt 2
        assert (lo * lo - 2) * (hi * hi - 2) < 0


def test_empty_curve():
    doc = json.loads(emit(top("x^2+y^2+1"), "json"))
    assert doc["graph"] == {"vertices": [], "edges": []}
    assert doc["components"] == 0


def test_byte_identical():
    a = emit(top("(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)"), "json")
    b = emit(top("(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)"), "json")
    assert a == b


def test_list_text_uses_decorated_list_with_lines():
    out = emit(top("x*(x^2+y^2-1)"), "list-text").decode()
    assert out.startswith("[[0,0],[[1,0],")


def test_unsupported_format():
    with pytest.raises(UnsupportedFormat):
        emit(top("x"), "png")
