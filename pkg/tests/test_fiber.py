from fractions import Fraction

import pytest

from curvetop.bpoly import IntPoly2, discriminant_y
from curvetop.fiber import (
    FiberIdenticallyZero, degree_filtration, fiber_at_rational, fiber_degrees,
    isolate_fiber_roots, match_fiber_roots, refine_fiber_roots, solve_system,
)
from curvetop.polyparse import parse_poly
from curvetop.upoly import IntPoly


def P(s):
    return parse_poly(s)


def U(s):
    """Univariate polynomial in x from text."""
    return P(s).coeff_y(0)


def _reduced(p: IntPoly) -> IntPoly:
    return p.primitive() if p.degree > 0 else IntPoly((1,))


def test_degree_filtration_degree_drop():
    f = degree_filtration(U("x"), P("x*y^2 + y - 1"))
    assert _reduced(f.R_deg[1]) == IntPoly((0, 1))
    assert f.R_deg[2].degree <= 0


def test_degree_filtration_constant_lc():
    f = degree_filtration(U("x - 3"), P("y^2 - x"))
    assert _reduced(f.R_deg[2]) == IntPoly((-3, 1))
    assert f.R_deg[1].degree <= 0 and f.R_deg[0].degree <= 0


def test_degree_filtration_rejects_vanishing_fiber():
    with pytest.raises(FiberIdenticallyZero):
        degree_filtration(U("x^2 - x"), P("x*y"))


def test_fiber_degrees():
    [(z, n, k)] = fiber_degrees(U("x - 1"), P("y^2 - 2*x*y + x^2"))
    assert (n, k) == (2, 1)
    got = fiber_degrees(U("x^2 - 2"), P("y^2 - x"))
    assert sorted((n, k) for _, n, k in got) == [(2, 0), (2, 0)]
    [(z, n, k)] = fiber_degrees(U("x"), P("x*y^2 + y - 1"))
    assert (n, k) == (1, 0)


def test_isolate_fiber_roots_over_sqrt2():
    sols = isolate_fiber_roots(U("x^2 - 2"), P("y^2 - x"))
    by_sign = {s.base.center()[0] > 0: s for s in sols}
    pos, neg = by_sign[True], by_sign[False]
    assert [r.is_real for r in pos.roots].count(True) == 2
    assert [r.is_real for r in neg.roots].count(True) == 0
    for r in pos.roots + neg.roots:
        assert r.multiplicity == 1
    q = 2 ** 0.25
    vals = sorted(float(r.center()[0]) for r in pos.real_roots())
    assert abs(vals[0] + q) < 1e-3 and abs(vals[1] - q) < 1e-3


def test_fiber_triple_root():
    [s] = isolate_fiber_roots(U("x"), P("y^3"))
    assert [(r.multiplicity, r.is_real) for r in s.roots] == [(3, True)]


def test_fiber_two_rational_roots():
    [s] = isolate_fiber_roots(U("x - 1"), P("(y - 1)*(y - 2)"))
    assert sorted(r.center()[0] for r in s.real_roots()) == [1, 2]


@pytest.mark.parametrize("R, F, L", [("x", "y^2 - x^3", 16), ("x^2 - 2", "y - x", 30)])
def test_refinement(R, F, L):
    for s in isolate_fiber_roots(U(R), P(F)):
        refine_fiber_roots(s, L)
        for r in s.roots:
            assert r.width() < Fraction(1, 1 << L)


def test_example_curve_fiber_at_zero():
    s = fiber_at_rational(P("(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)"), Fraction(0))
    refine_fiber_roots(s, 10)
    got = sorted((r.center()[0], r.multiplicity) for r in s.real_roots())
    assert [m for _, m in got] == [2, 2]
    assert abs(got[0][0] + Fraction(1, 2)) < Fraction(1, 1024)
    assert abs(got[1][0] - Fraction(1, 2)) < Fraction(1, 1024)


def test_fiber_invariants_on_discriminant_roots():
    F = P("y^3 - 3*y - x")
    for s in isolate_fiber_roots(discriminant_y(F), F):
        assert sum(r.multiplicity for r in s.roots) == s.n
        assert len(s.roots) == s.n - s.k
        for i, a in enumerate(s.roots):
            for b in s.roots[i + 1:]:
                assert not a.disk().overlaps(b.disk())


def test_match_signs():
    [mf] = match_fiber_roots(U("x"), P("y - 1"), P("y + 1"))
    info = sorted((mr.root.center()[0], mr.membership, mr.sign_f, mr.sign_g) for mr in mf.roots)
    assert info == [(-1, "G", -1, 0), (1, "F", 0, 1)]
    [mf] = match_fiber_roots(U("x"), P("y"), P("y"))
    assert [mr.membership for mr in mf.roots] == ["both"]


def test_match_over_sqrt2():
    fibers = match_fiber_roots(U("x^2 - 2"), P("y^2 - x"), P("2*y"))
    [pos] = [f for f in fibers if f.base.is_real and f.base.center()[0] > 0]
    info = sorted((float(mr.root.center()[0]), mr.membership, mr.sign_f, mr.sign_g)
                  for mr in pos.roots if mr.root.is_real)
    assert [(m, sf, sg) for _, m, sf, sg in info] == [("F", 0, -1), ("G", -1, 0), ("F", 0, 1)]


def test_solve_system_examples():
    [s] = solve_system(P("x"), P("y"))
    assert s.x.exact_value == 0 and s.y.center() == (0, 0)
    [s] = solve_system(P("x*y - 1"), P("y - 1"))
    assert s.x.exact_value == 1 and s.y.center()[0] == 1
    sols = solve_system(P("x^2 + y^2 - 1"), P("y - x"))
    assert len(sols) == 2
    for s in sols:
        assert s.x.is_real and s.y.is_real
        xv, yv = s.x.center()[0], s.y.center()[0]
        assert abs(float(xv) - float(yv)) < 1e-3 and abs(float(xv) ** 2 - 0.5) < 1e-3


def test_solve_system_rejects_common_factor():
    with pytest.raises(ValueError):
        solve_system(P("x*y"), P("x*(y - 1)"))
