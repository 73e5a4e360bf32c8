"""Solve a bivariate system and print certified enclosures of its real
solutions.

    python demos/solve_system.py "x^2 + y^2 - 4" "x*y - 1"
"""

import sys

from curvetop.fiber import solve_system
from curvetop.polyparse import parse_poly


def main(argv):
    f_text, g_text = argv[1:3] if len(argv) >= 3 else ("x^2 + y^2 - 4", "x*y - 1")
    sols = solve_system(parse_poly(f_text), parse_poly(g_text))
    print(f"{len(sols)} distinct complex solutions")
    for s in sols:
        if s.x.is_real and s.y.is_real:
            ix, iy = s.x.region, s.y.interval()
            print(f"  x in [{float(ix.lo):.12g}, {float(ix.hi):.12g}], "
                  f"y in [{float(iy.lo):.12g}, {float(iy.hi):.12g}]")


if __name__ == "__main__":
    main(sys.argv)
