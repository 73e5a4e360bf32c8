from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from curvetop.upoly import (
    IntPoly, NotDivisible, bareiss_det, cauchy_bound, discriminant, distinct_root_count,
    divides, exact_div, gcd, gdisc_abs, metrics, resultant, square_free_decomposition,
    square_free_part, subdiscriminants, subresultant_coefficients, sylvester_sr_det,
    taylor_coefficient, taylor_shift,
)

X = sympy.Symbol("X")
coeff_lists = st.lists(st.integers(-30, 30), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)
polys = coeff_lists.map(IntPoly)


def to_sympy(f: IntPoly):
    return sympy.Poly(list(reversed(f.c)), X)


def sylvester_matrix(f: IntPoly, g: IntPoly) -> sympy.Matrix:
    n, m = f.degree, g.degree
    rows = []
    for i in range(m):
        rows.append([0] * i + list(reversed(f.c)) + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(reversed(g.c)) + [0] * (n - 1 - i))
    return sympy.Matrix(rows)


def test_ring_ops():
    f = IntPoly((1, 1))
    assert f * f == IntPoly((1, 2, 1))
    assert (f ** 3).c == (1, 3, 3, 1)
    assert f - f == IntPoly(())
    assert IntPoly.from_roots([1, 2]) == IntPoly((2, -3, 1))
    assert IntPoly((0, 0, 3)).derivative() == IntPoly((0, 6))


def test_exact_div_and_failure():
    assert exact_div(IntPoly((-1, 0, 1)), IntPoly((1, 1))) == IntPoly((-1, 1))
    with pytest.raises(NotDivisible):
        exact_div(IntPoly((1, 0, 1)), IntPoly((1, 1)))


def test_gcd_examples():
    f = IntPoly.from_roots([1, 2, 3])
    g = IntPoly.from_roots([2, 3, 5])
    assert gcd(f, g) == IntPoly.from_roots([2, 3])
    assert gcd(IntPoly((1, 1)), IntPoly((1, -1))) == IntPoly((1,))


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_gcd_matches_sympy(a, b, c):
    f, g = a * c, b * c
    mine = gcd(f, g)
    ref = sympy.gcd(to_sympy(f), to_sympy(g))
    assert mine.degree == ref.degree()
    assert divides(mine, f) and divides(mine, g)


@given(polys)
@settings(max_examples=60, deadline=None)
def test_square_free(f):
    g = square_free_part(f * f)
    assert gcd(g, g.derivative()).degree <= 0
    assert g.degree == sympy.sqf_part(to_sympy(f)).degree()
    prod = IntPoly((1,))
    for h, k in square_free_decomposition(f * f * IntPoly((1, 1))):
        prod = prod * h ** k
    assert prod.degree == 2 * f.degree + 1


def test_square_free_decomposition_example():
    f = IntPoly((1, 1)) * IntPoly((-2, 1)) ** 2 * IntPoly((0, 1)) ** 3
    parts = dict((k, h) for h, k in square_free_decomposition(f))
    assert parts == {1: IntPoly((1, 1)), 2: IntPoly((-2, 1)), 3: IntPoly((0, 1))}


def test_taylor():
    f = IntPoly((1, 2, 3, 4))
    assert taylor_coefficient(f, 0) == f
    assert taylor_coefficient(f, 1) == f.derivative()
    assert taylor_coefficient(f, 3) == IntPoly((4,))
    shifted = IntPoly(taylor_shift(list(f.c), 2))
    assert all(shifted(x) == f(x + 2) for x in range(-3, 4))


def test_cauchy_bound_and_metrics():
    f = IntPoly((-6, 11, -6, 1))   # roots 1, 2, 3
    C = cauchy_bound(f)
    assert C == 24 and C > 3
    m = metrics(f)
    assert m.length == 24 and m.norm_sq == 36 + 121 + 36 + 1
    assert m.mahler_upper ** 2 >= m.norm_sq


@given(coeff_lists, coeff_lists)
@settings(max_examples=80, deadline=None)
def test_subresultants_match_determinants(fc, gc):
    f, g = IntPoly(fc), IntPoly(gc)
    sr = subresultant_coefficients(f, g)
    for k in range(min(f.degree, g.degree)):
        assert sr[k] == sylvester_sr_det(list(f.c), list(g.c), k)


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_resultant_matches_sylvester_determinant(f, g):
    assert resultant(f, g) == sylvester_matrix(f, g).det()


def test_bareiss():
    assert bareiss_det([[2, 0], [0, 3]]) == 6
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0


def test_discriminant_examples():
    # lc(f) Disc(f) = Res(f, f'), without the classical sign factor
    assert discriminant(IntPoly((-1, 0, 1))) == -4
    assert abs(discriminant(IntPoly((-2, 0, 1)))) == 8
    assert discriminant(IntPoly((1, 2, 1))) == 0
    assert discriminant(IntPoly((0, 0, 0, 1))) == 0
    assert subdiscriminants(IntPoly((0, 0, 0, 1)))[:2] == [0, 0]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_distinct_root_count(roots, lead):
    f = IntPoly.from_roots(roots) * lead
    assert distinct_root_count(f) == len(set(roots))


@given(polys)
@settings(max_examples=40, deadline=None)
def test_discriminant_matches_sympy_up_to_sign_convention(f):
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert discriminant(f) == sign * sympy.discriminant(to_sympy(f))


def test_gdisc_square_free_equals_disc():
    f = IntPoly((-2, 0, 1))
    assert gdisc_abs(f) == abs(discriminant(f)) == 8


def test_gdisc_double_root():
    # (X - 1)^2 (X + 1): one double root, so GDisc is built from the
    # distinct roots and their multiplicity weights; it must not vanish
    f = IntPoly.from_roots([1, 1, -1])
    assert gdisc_abs(f) != 0
    assert isinstance(gdisc_abs(f), Fraction)
