"""Strip counts against vertical sign changes on a fine grid.

Only bounded curves are used, so every real branch over a sample lies in
the grid window and no two branches come closer than the grid step.
"""

from fractions import Fraction

import pytest

from curvetop.polyparse import parse_poly
from curvetop.topo import analyze

from oracles import vertical_line_count

BOUNDED = [
    "x^2 + y^2 - 1",
    "x^2 + 4*y^2 - 4",
    "(x^2 + y^2)^2 - 2*(x^2 - y^2)",
    "x^4 + y^4 - 1",
    "(x^2 + y^2 - 1)*(x^2 + y^2 - 4)",
    "(x^2 + y^2 - 1)*((x-1)^2 + y^2 - 1)",
    "y^2 - x^2*(1 - x^2)",
    "x^2 + y^2",
]


@pytest.mark.parametrize("expr", BOUNDED)
def test_between_counts_match_grid(expr):
    P = parse_poly(expr)
    cad = analyze(P).cad
    assert len(cad.samples) == len(cad.between)
    for x, m in zip(cad.samples, cad.between):
        assert vertical_line_count(P, Fraction(x), -4, 4) == m


@pytest.mark.parametrize("expr", BOUNDED)
def test_special_counts_match_grid_at_rational_values(expr):
    P = parse_poly(expr)
    for f in analyze(P).cad.fibers:
        x = f.alpha.exact
        if x is not None and all(r.interval().lo == r.interval().hi
                                 for r in f.solution.real_roots()):
            assert vertical_line_count(P, x, -4, 4) == f.m
