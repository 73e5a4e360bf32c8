from fractions import Fraction

import pytest

from curvetop.bpoly import IntPoly2
from curvetop.cad import (
    CertificationError, CurveNotSquareFree, _separations_hold, audit, decompose,
    frame_polys, split_lines,
)
from curvetop.polyparse import parse_poly
from curvetop.upoly import IntPoly

EX1 = "(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)"


def P(s):
    return parse_poly(s)


def test_split_lines_vertical_content():
    sp = split_lines(P("x*y^2 - x^2"))
    assert sp.c == IntPoly((0, 1)) and sp.Ptilde == P("y^2 - x") and sp.square_free


def test_split_lines_example_curve():
    sp = split_lines(P(f"(4*x+1)*(8*x-1)*(16*x-1)*{EX1}"))
    assert sp.c.primitive() == P("(4*x+1)*(8*x-1)*(16*x-1)").coeff_y(0).primitive()
    assert sp.Ptilde == P(EX1) or sp.Ptilde == -P(EX1)
    assert sp.P == IntPoly2.from_x(sp.c) * sp.Ptilde


def test_split_lines_trivial():
    sp = split_lines(P("y^2 - x"))
    assert sp.c.degree == 0 and sp.d.degree == 0


def test_split_lines_horizontal_content():
    sp = split_lines(P("(y - 1)*(y^2 - x)"))
    assert sp.d.degree == 1 and sp.Ptilde == IntPoly2.from_y(sp.d) * sp.Q


def test_split_lines_detects_square_factor():
    assert not split_lines(P("(y^2 - x)^2")).square_free
    assert not split_lines(P("x^2*(y - x)")).square_free
    with pytest.raises(CurveNotSquareFree):
        decompose(P("(x + y)^2"))


def test_frame_circle():
    sp = split_lines(P("x^2 + y^2 - 1"))
    fr = frame_polys(sp.Ptilde, sp.Q)
    assert fr.DX.primitive() in (IntPoly((-1, 0, 1)), IntPoly((1, 0, -1)))


def test_frame_parabola():
    sp = split_lines(P("y^2 - x"))
    fr = frame_polys(sp.Ptilde, sp.Q)
    assert fr.DX.primitive() in (IntPoly((0, 1)), IntPoly((0, -1)))


def test_circle_fibers():
    d = decompose(P("x^2 + y^2 - 1"))
    assert d.n_special == 2
    for f in d.fibers:
        assert f.m == 1 and f.crit == [1]
        assert f.solution.roots[0].multiplicity == 2
    assert d.between == [0, 2, 0]


def test_example_curve_fibers():
    d = decompose(P(EX1))
    assert d.n_special == 5
    f3 = d.fibers[2]
    assert f3.alpha.exact == 0
    assert f3.m == 2 and f3.crit == [1, 2]
    assert [r.multiplicity for r in f3.solution.real_roots()] == [2, 2]
    f2 = d.fibers[1]
    assert f2.alpha.exact == Fraction(-1, 4)
    assert f2.m == 4 and f2.crit == [3]
    approx = [float(r.center()[0]) for r in f2.solution.real_roots()]
    for got, want in zip(approx, [-4, -2 ** -0.5, 0, 2 ** -0.5]):
        assert abs(got - want) < 1e-3


def test_asymptotes_hyperbola():
    d = decompose(P("x*y - 1"))
    [f] = d.fibers
    assert f.alpha.exact == 0 and f.m == 0
    assert f.left == [1, 0] and f.right == [0, 1]


def test_asymptotes_example_curve_at_zero():
    f3 = decompose(P(EX1)).fibers[2]
    assert f3.left[0] == 1 and f3.right[-1] == 1


def test_circle_has_no_asymptotes():
    for f in decompose(P("x^2 + y^2 - 1")).fibers:
        assert f.left[0] == f.left[-1] == f.right[0] == f.right[-1] == 0


@pytest.mark.parametrize("expr", ["x^2 + y^2 - 1", "y^2 - x^3", EX1, "x*y^2 + y"])
def test_audit_passes(expr):
    d = decompose(P(expr))
    assert all(audit(d).values())


def test_audit_rejects_tampered_counts():
    d = decompose(P("x^2 + y^2 - 1"))
    d.fibers[0].right[1] += 1
    assert not audit(d)["branch_conservation"]


def test_separation_records_are_checked():
    d = decompose(P("y^2 - x^3"))
    [box] = d.fibers[0].boxes.values()
    assert _separations_hold(box.separations)
    coord, roots = box.separations[0]
    flipped = [(r, not j) for r, j in roots] or [(coord, False)]
    assert not _separations_hold([(coord, flipped)])


def test_degree_drop_curve_gets_special_value():
    # Disc_Y(x y^2 + y) = 1 but x = 0 is a vertical asymptote
    d = decompose(P("x*y^2 + y"))
    assert any(f.alpha.exact == 0 for f in d.fibers)


def test_deterministic():
    a = decompose(P(EX1))
    b = decompose(P(EX1))
    assert [(f.m, f.left, f.right) for f in a.fibers] == [(f.m, f.left, f.right) for f in b.fibers]
    assert a.between == b.between and a.samples == b.samples


def test_certification_error_type():
    assert issubclass(CertificationError, RuntimeError)
