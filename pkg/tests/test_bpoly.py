from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from curvetop.bpoly import (
    IntPoly2, discriminant_x, discriminant_y, resultant_x, resultant_y, subdiscriminants_y,
)
from curvetop.polyparse import parse_poly
from curvetop.upoly import IntPoly

xs, ys = sympy.symbols("x y")


def to_sympy(F: IntPoly2):
    return sum(c * xs ** i * ys ** j for (i, j), c in F.to_dict().items())


small = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-9, 9),
                        min_size=1, max_size=6).map(lambda d: IntPoly2.from_dict({k: v for k, v in d.items() if v}))


def test_basic_structure():
    P = parse_poly("x^2*y + 3*y^3 - x + 7")
    assert P.deg_y == 3 and P.deg_x == 2 and P.total_degree == 3
    assert P.lc_y() == IntPoly((3,))
    assert P.transpose().deg_y == 2
    assert P.eval_exact(1, 2) == 2 + 24 - 1 + 7
    # P(1/2, Y) = 3 Y^3 + Y/4 + 13/2, cleared of denominators
    assert P.eval_x(Fraction(1, 2)) == IntPoly((26, 1, 0, 12))


def test_eval_x_rational_is_scaled_integer_poly():
    P = parse_poly("x*y - 1")
    assert P.eval_x(Fraction(1, 2)) == IntPoly((-2, 1))


def test_shear():
    P = parse_poly("x^2 + y^2 - 1")
    assert P.shear(1) == parse_poly("(x + y)^2 + y^2 - 1")
    assert P.shear(0) == P


@given(small, st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2))
def test_shear_evaluation(P, a, b, s):
    assert P.shear(s).eval_exact(a, b) == P.eval_exact(a + s * b, b)


def test_circle_discriminant():
    D = discriminant_y(parse_poly("x^2 + y^2 - 1"))
    assert D == IntPoly((4, 0, -4)) or D == IntPoly((-4, 0, 4))


def test_example_curve_discriminant():
    P = parse_poly("(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)")
    D = discriminant_y(P)
    x = sympy.Symbol("x")
    ref = -2 ** 28 * x ** 4 * (4 * x - 1) * (1 + 4 * x) * (4 - x ** 2 + 4 * x ** 3) ** 2 \
        * (-4 + x ** 2 + 4 * x ** 3) ** 2
    refp = sympy.Poly(sympy.expand(ref), x)
    assert list(D.c) == [int(c) for c in reversed(refp.all_coeffs())]


@given(small, small)
@settings(max_examples=40, deadline=None)
def test_resultants_match_sympy_up_to_sign(F, G):
    if F.deg_y < 1 or G.deg_y < 1:
        return
    R = resultant_y(F, G)
    ref = sympy.resultant(to_sympy(F), to_sympy(G), ys)
    ref = sympy.Poly(ref, xs) if ref != 0 else None
    if ref is None:
        assert R.is_zero()
        return
    mine = [int(c) for c in R.c]
    theirs = [int(c) for c in reversed(ref.all_coeffs())]
    assert mine == theirs or mine == [-c for c in theirs]


def test_resultant_x_is_transposed():
    F = parse_poly("x^2 + y^2 - 1")
    G = parse_poly("x - y")
    assert resultant_x(F, G) == resultant_y(F.transpose(), G.transpose())
    assert resultant_y(F, G).degree == 2


def test_discriminant_x_of_parabola():
    # y - x^2 has two branches over y > 0 when viewed in x
    D = discriminant_x(parse_poly("y - x^2"))
    assert D.degree == 1 and D(0) == 0


def test_subdiscriminants_y_count_distinct_fiber_roots():
    P = parse_poly("y^2 - x")
    sd = subdiscriminants_y(P)
    assert sd[0](0) == 0 and sd[1](0) != 0
    assert sd[0](1) != 0
