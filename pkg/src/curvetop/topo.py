"""Topology of a plane curve from its refined CAD.

Branch counts at critical points, the nested list encoding, the planar
graph embedding and its invariants (connected components, Euler
characteristic).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


# --------------------------------------------------------- branch counts

@dataclass
class BoxCounts:
    """Cardinalities on the boundary of one adjacency box.

    Names follow the box sides: ``am``/``ap`` are the vertical sides at
    the lower and upper x-buffers, ``gm``/``gp`` the horizontal sides at
    the lower and upper levels, ``a`` the critical fiber itself.
    """

    L_am: int = 0           # points strictly inside the left side
    L_ap: int = 0
    gp_lt: int = 0          # top side, left of alpha
    gp_gt: int = 0
    gm_lt: int = 0
    gm_gt: int = 0
    gp_eq_am: int = 0       # curve passes through the corner (alpha^-, gamma^+)
    gp_eq_a: int = 0
    gp_eq_ap: int = 0
    gm_eq_am: int = 0
    gm_eq_a: int = 0
    gm_eq_ap: int = 0
    a_gt: int = 0           # other points of the critical fiber above beta
    a_lt: int = 0
    sigma_p: int = 1
    sigma_m: int = 1
    tau_p: int = 1
    tau_m: int = 1
    flow_left: int = 0      # same numbers counted from every boundary slope
    flow_right: int = 0
    ambiguous: list[str] = field(default_factory=list)
    # (fixed coordinate, [(fiber root, is the junction root)]) per box side
    separations: list = field(default_factory=list)


def left_count(b: BoxCounts) -> int:
    """Branches reaching the critical point from the left."""
    drop = b.a_gt + b.a_lt
    if b.sigma_p > 0 and b.sigma_m > 0:
        return b.L_am - (b.gp_lt + b.gp_eq_a) + b.gm_lt + b.gm_eq_am - drop
    if b.sigma_p > 0 and b.sigma_m < 0:
        return b.L_am - (b.gp_lt + b.gp_eq_a) - (b.gm_lt + b.gm_eq_a) - drop
    if b.sigma_p < 0 and b.sigma_m > 0:
        return b.L_am + b.gp_lt + b.gp_eq_am + b.gm_lt + b.gm_eq_am - drop
    return b.L_am + b.gp_lt + b.gp_eq_am - (b.gm_lt + b.gm_eq_a) - drop


def right_count(b: BoxCounts) -> int:
    """Branches reaching the critical point from the right."""
    drop = b.a_gt + b.a_lt
    if b.tau_p < 0 and b.tau_m < 0:
        return b.L_ap - (b.gp_gt + b.gp_eq_a) + b.gm_gt + b.gm_eq_ap - drop
    if b.tau_p < 0 and b.tau_m > 0:
        return b.L_ap - (b.gp_gt + b.gp_eq_a) - (b.gm_gt + b.gm_eq_a) - drop
    if b.tau_p > 0 and b.tau_m < 0:
        return b.L_ap + b.gp_gt + b.gp_eq_ap + b.gm_gt + b.gm_eq_ap - drop
    return b.L_ap + b.gp_gt + b.gp_eq_ap - (b.gm_gt + b.gm_eq_a) - drop


def left_right(b: BoxCounts) -> tuple[int, int]:
    """(Left, Right) for one critical point; negative values are a bug."""
    left, right = left_count(b), right_count(b)
    if left < 0 or right < 0:
        from .cad import CertificationError
        raise CertificationError(f"negative branch count ({left}, {right})")
    return left, right


def box_counts(dec, i: int, j: int) -> BoxCounts:
    """Boundary counts of the box around the j-th point over alpha_i (1-based)."""
    return dec.fibers[i - 1].boxes[j]


def slope_signs(dec, i: int, j: int) -> tuple[int, int, int, int]:
    b = box_counts(dec, i, j)
    return b.sigma_p, b.sigma_m, b.tau_p, b.tau_m


# ------------------------------------------------------------------ lists

def assemble_list(dec) -> list:
    """[m'_0, L_1, m'_1, ..., L_N, m'_N] with L_i = [m_i, [[Left, Right], ...]]."""
    out: list = [dec.between[0]]
    for f, mp in zip(dec.fibers, dec.between[1:]):
        out.append([f.m, [[l, r] for l, r in zip(f.left, f.right)]])
        out.append(mp)
    return out


def reinsert_vertical_lines(dec) -> list:
    """The list decorated with vertical lines: [N'_0, L'_1, ..., N'_N]."""
    out: list = [[dec.between[0], dec.vlines_between[0]]]
    for i, f in enumerate(dec.fibers):
        out.append([[f.m, f.vline], [[l, r] for l, r in zip(f.left, f.right)]])
        out.append([dec.between[i + 1], dec.vlines_between[i + 1]])
    return out


def list_text(lst) -> str:
    """Bracket notation without spaces, e.g. [0,[1,[[0,0],[0,2],[0,0]]],2]."""
    if isinstance(lst, list):
        return "[" + ",".join(list_text(x) for x in lst) + "]"
    return str(lst)


def parse_list(text: str) -> list:
    import json
    return json.loads(text)


# -------------------------------------------------------------- the graph

Point = tuple[Fraction, Fraction]


@dataclass
class PlanarGraph:
    vertices: list[Point]
    edges: list[tuple[int, int]]
    kinds: list[str] = field(default_factory=list)

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    def components(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(u) for u in range(len(self.vertices))})

    def crossings(self) -> list[tuple[int, int]]:
        """Pairs of edges meeting anywhere but at a shared endpoint."""
        bad = []
        segs = [(self.vertices[u], self.vertices[v], u, v) for u, v in self.edges]
        for a in range(len(segs)):
            p1, p2, u1, v1 = segs[a]
            for b in range(a + 1, len(segs)):
                q1, q2, u2, v2 = segs[b]
                shared = {u1, v1} & {u2, v2}
                if _segments_meet_elsewhere(p1, p2, q1, q2, shared, (u1, v1), (u2, v2)):
                    bad.append((a, b))
        return bad


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _intersect(p1, p2, q1, q2) -> bool:
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
        return True
    return ((d1 == 0 and _on_segment(q1, q2, p1)) or (d2 == 0 and _on_segment(q1, q2, p2))
            or (d3 == 0 and _on_segment(p1, p2, q1)) or (d4 == 0 and _on_segment(p1, p2, q2)))


def _segments_meet_elsewhere(p1, p2, q1, q2, shared, e1, e2) -> bool:
    if not _intersect(p1, p2, q1, q2):
        return False
    if not shared:
        return True
    # one shared endpoint: they must not overlap along a common line
    s = shared.pop()
    other_p = p2 if e1[0] == s else p1
    other_q = q2 if e2[0] == s else q1
    base = p1 if e1[0] == s else p2
    if _orient(base, other_p, other_q) != 0:
        return False
    # collinear from the same point: overlap iff same direction
    dp = (other_p[0] - base[0], other_p[1] - base[1])
    dq = (other_q[0] - base[0], other_q[1] - base[1])
    return dp[0] * dq[0] + dp[1] * dq[1] > 0


class _Builder:
    def __init__(self):
        self.vertices: list[Point] = []
        self.kinds: list[str] = []
        self.index: dict[Point, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.vsegs: list[tuple[Fraction, Fraction, Fraction]] = []   # x, y0, y1

    def vertex(self, p: Point, kind: str, shared: bool = True) -> int:
        p = (Fraction(p[0]), Fraction(p[1]))
        if shared and p in self.index:
            return self.index[p]
        self.vertices.append(p)
        self.kinds.append(kind)
        if shared:
            self.index[p] = len(self.vertices) - 1
        return len(self.vertices) - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))


def embed_graph(lst: list) -> PlanarGraph:
    """Straight-line drawing of the decorated list.

    Regular points sit at x = 2i + 1, fiber points over alpha_i at x = 2i.
    Every asymptotic end gets its own leaf vertex close to the
    asymptote, and vertical lines are cut where they meet curve edges,
    so the drawing is a planar graph isotopic to the curve.
    """
    N = (len(lst) - 1) // 2
    mids = [lst[2 * i] for i in range(N + 1)]            # [m'_i, v_i]
    specs = [lst[2 * i + 1] for i in range(N)]           # [[m_i, w_i], pairs]
    mp = [m[0] for m in mids]
    vb = [m[1] for m in mids]
    ms = [s[0][0] for s in specs]
    ws = [s[0][1] for s in specs]
    pairs = [s[1] for s in specs]
    dp = max(mp + ms + [0])
    H = Fraction(dp + 1)
    g = _Builder()

    def I(i, j):
        return g.vertex((Fraction(2 * i + 1), j * H / (mp[i] + 1)), "regular")

    def Pnt(i, j):   # i is 1-based
        return g.vertex((Fraction(2 * i), j * H / (ms[i - 1] + 1)), "fiber")

    # unbounded ends on the far left and right
    for j in range(1, mp[0] + 1):
        u = g.vertex((Fraction(0), j * H / (mp[0] + 1)), "end", shared=False)
        g.edge(u, I(0, j))
    for j in range(1, mp[N] + 1):
        u = g.vertex((Fraction(2 * (N + 1)), j * H / (mp[N] + 1)), "end", shared=False)
        g.edge(I(N, j), u)

    for i in range(1, N + 1):
        m = ms[i - 1]
        lr = pairs[i - 1]
        for side in ("left", "right"):
            strip = i - 1 if side == "left" else i
            counts = [p[0] if side == "left" else p[1] for p in lr]
            hw = Fraction(1, 2 * (vb[strip] + 1))
            acc = 0
            for j, cnt in enumerate(counts):
                ells = list(range(acc + 1, acc + cnt + 1))
                acc += cnt
                if j in (0, m + 1):
                    # one leaf per asymptotic end, fanned so edges do not cross
                    y = Fraction(0) if j == 0 else H
                    for t, ell in enumerate(ells):
                        rank = (cnt - t) if j == 0 else (t + 1)
                        off = hw * rank / (cnt + 1)
                        x = Fraction(2 * i) - off if side == "left" else Fraction(2 * i) + off
                        u = g.vertex((x, y), "asymptote", shared=False)
                        g.edge(I(strip, ell), u) if side == "left" else g.edge(u, I(strip, ell))
                else:
                    v = Pnt(i, j)
                    for ell in ells:
                        g.edge(I(strip, ell), v) if side == "left" else g.edge(v, I(strip, ell))
            if acc != mp[strip]:
                raise ValueError("list violates branch conservation")
        for j in range(1, m + 1):
            Pnt(i, j)
        if ws[i - 1]:
            lo = H / (4 * (m + 1))
            g.vsegs.append((Fraction(2 * i), lo, H - lo))
    for i in range(N + 1):
        for ell in range(1, vb[i] + 1):
            g.vsegs.append((Fraction(2 * i) + Fraction(2 * ell, vb[i] + 1), Fraction(0), H))
    _add_vertical_segments(g)
    return PlanarGraph(g.vertices, g.edges, g.kinds)


def _add_vertical_segments(g: _Builder) -> None:
    """Insert vertical lines, cutting them and the curve edges where they meet."""
    for x, y0, y1 in g.vsegs:
        stops = {y0, y1}
        # existing vertices on the line
        for (px, py) in list(g.vertices):
            if px == x and y0 <= py <= y1:
                stops.add(py)
        new_edges = []
        for (u, v) in g.edges:
            (ax, ay), (bx, by) = g.vertices[u], g.vertices[v]
            if ax == bx or not (min(ax, bx) < x < max(ax, bx)):
                new_edges.append((u, v))
                continue
            t = (x - ax) / (bx - ax)
            y = ay + t * (by - ay)
            if y0 <= y <= y1:
                w = g.vertex((x, y), "crossing")
                stops.add(y)
                new_edges.append((u, w))
                new_edges.append((w, v))
            else:
                new_edges.append((u, v))
        g.edges = new_edges
        ys = sorted(stops)
        ids = [g.vertex((x, y), "vline") for y in ys]
        for a, b in zip(ids, ids[1:]):
            g.edge(a, b)


@dataclass
class Topology:
    """Everything computed for one curve."""

    cad: object
    curve_list: list
    full_list: list
    graph: PlanarGraph
    components: int
    euler_characteristic: int


def analyze(P, buffers: str = "derivative") -> Topology:
    """Topology of the real curve P = 0."""
    from .cad import decompose
    dec = decompose(P, buffers)
    L = assemble_list(dec)
    LP = reinsert_vertical_lines(dec)
    G = embed_graph(LP)
    return Topology(dec, L, LP, G, G.components(), G.euler_characteristic)
