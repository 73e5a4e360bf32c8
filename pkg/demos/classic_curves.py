"""Print the topology list, component count and Euler characteristic of a
few well-known curves.

    python demos/classic_curves.py
"""

from curvetop.polyparse import parse_poly
from curvetop.topo import analyze, list_text

CURVES = {
    "circle": "x^2 + y^2 - 1",
    "cusp": "y^2 - x^3",
    "node": "y^2 - x^2*(x+1)",
    "isolated point": "x^2 + y^2",
    "lemniscate": "(x^2 + y^2)^2 - 2*(x^2 - y^2)",
    "hyperbola and two parabolas": "(x*y-1)*(4*y^2-4*x-1)*(4*y^2+4*x-1)",
}


def main():
    for name, expr in CURVES.items():
        top = analyze(parse_poly(expr))
        print(f"{name:28s} components={top.components} chi={top.euler_characteristic}")
        print(f"{'':28s} {list_text(top.curve_list)}")


if __name__ == "__main__":
    main()
