"""Serialisation of a computed topology.

All writers are deterministic: the same input gives the same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactnum import ceil_dyadic, dyadic_decimal, floor_dyadic, is_dyadic
from .topo import Topology, list_text

FORMATS = ("json", "dot", "svg", "list-text")


class UnsupportedFormat(ValueError):
    pass


def _dyadic_bounds(lo: Fraction, hi: Fraction) -> list[str]:
    # exact rationals such as 1/3 get an outward dyadic enclosure
    if not is_dyadic(lo):
        lo = floor_dyadic(lo, 2 * lo.denominator.bit_length() + 8)
    if not is_dyadic(hi):
        hi = ceil_dyadic(hi, 2 * hi.denominator.bit_length() + 8)
    return [dyadic_decimal(lo), dyadic_decimal(hi)]


def to_dict(top: Topology, stats: bool = False) -> dict:
    """The canonical JSON document as plain Python data."""
    cad = top.cad
    fibers = []
    for f in cad.fibers:
        iv = f.alpha.interval()
        fibers.append({
            "alpha": _dyadic_bounds(iv.lo, iv.hi),
            "m": f.m,
            "crit": list(f.crit),
            "left": list(f.left),
            "right": list(f.right),
            "vline": f.vline,
        })
    g = top.graph
    doc = {
        "n_special": cad.n_special,
        "fibers": fibers,
        "between": [{"count": c, "vlines": v} for c, v in zip(cad.between, cad.vlines_between)],
        "list": top.full_list,
        "graph": {
            "vertices": [[x.numerator, x.denominator, y.numerator, y.denominator]
                         for x, y in g.vertices],
            "edges": [[u, v] for u, v in g.edges],
        },
        "components": top.components,
        "euler_characteristic": top.euler_characteristic,
    }
    if stats:
        doc["stats"] = {k: (round(v, 6) if isinstance(v, float) else v)
                        for k, v in sorted(cad.stats.items())}
        doc["certificates"] = dict(sorted(cad.certificates.items()))
    return doc


def to_json(top: Topology, stats: bool = False) -> str:
    return json.dumps(to_dict(top, stats), separators=(",", ":")) + "\n"


def to_list_text(top: Topology) -> str:
    """The bracket list; decorated with vertical lines only when P has some."""
    has_lines = top.cad.split.c.degree > 0
    return list_text(top.full_list if has_lines else top.curve_list) + "\n"


def _num(q: Fraction) -> str:
    # short decimal for drawing coordinates
    return f"{float(q):.6g}"


def to_dot(top: Topology) -> str:
    g = top.graph
    out = ["graph curve {", "  node [shape=point];"]
    for k, (x, y) in enumerate(g.vertices):
        out.append(f'  v{k} [pos="{_num(x)},{_num(y)}!"];')
    for u, v in g.edges:
        out.append(f"  v{u} -- v{v};")
    out.append("}")
    return "\n".join(out) + "\n"


def to_svg(top: Topology, scale: int = 40) -> str:
    """Schematic drawing of the embedded graph (y grows upwards)."""
    g = top.graph
    pad = 10
    if g.vertices:
        xmax = max(x for x, _ in g.vertices)
        ymax = max(y for _, y in g.vertices)
    else:
        xmax = ymax = Fraction(1)
    w = float(xmax) * scale + 2 * pad
    h = float(ymax) * scale + 2 * pad

    def px(p):
        return (f"{float(p[0]) * scale + pad:.3f}", f"{h - float(p[1]) * scale - pad:.3f}")

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
           f'viewBox="0 0 {w:.3f} {h:.3f}">',
           '<g stroke="black" stroke-width="1.5" fill="none">']
    for u, v in g.edges:
        (x1, y1), (x2, y2) = px(g.vertices[u]), px(g.vertices[v])
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append('<g fill="black">')
    for p in g.vertices:
        x, y = px(p)
        out.append(f'<circle cx="{x}" cy="{y}" r="2"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(top: Topology, fmt: str, stats: bool = False) -> bytes:
    if fmt == "json":
        s = to_json(top, stats)
    elif fmt == "dot":
        s = to_dot(top)
    elif fmt == "svg":
        s = to_svg(top)
    elif fmt == "list-text":
        s = to_list_text(top)
    else:
        raise UnsupportedFormat(f"unsupported format {fmt!r}; choose from {', '.join(FORMATS)}")
    return s.encode("utf-8")
