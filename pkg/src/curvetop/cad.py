"""Refined cylindrical decomposition of a real plane curve.

Given a square-free P in Z[X, Y], the vertical and horizontal lines are
split off, the special x-values alpha_i and the special levels gamma_k are
isolated, each X-critical point (alpha_i, beta_ij) gets an adjacency box
bounded by buffer values, and the number of branches reaching every
point of every special fiber from the left and from the right is
computed.  The result is everything the topology module needs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bpoly import IntPoly2, discriminant_x, discriminant_y, resultant_x, resultant_y
from .exactnum import CBall, Interval, RefinementBudgetExceeded, simplest_dyadic_between
from .fiber import FiberRoot, FiberSolution, degree_filtration, fiber_at_rational
from .roots import AlgebraicNumber, count_real_roots, isolate_real_roots, sign_at, vanishes_at
from .topo import BoxCounts, left_right
from .upoly import IntPoly, cauchy_bound, exact_div, gcd, square_free_part

JUNCTION_CAP = 256
HARD_CAP = 1 << 13


class CurveNotSquareFree(ValueError):
    """The input polynomial has a repeated factor."""


class CertificationError(RuntimeError):
    """A certificate check failed (branch conservation, containment, ...)."""


# ------------------------------------------------------------ line split

@dataclass
class LineSplit:
    """P = c(X) * Ptilde and Ptilde = d(Y) * Q."""

    P: IntPoly2
    c: IntPoly
    Ptilde: IntPoly2
    d: IntPoly
    Q: IntPoly2
    square_free: bool


def split_lines(P: IntPoly2) -> LineSplit:
    """Separate the vertical lines c(X) = 0 from the rest of the curve."""
    if P.is_zero():
        raise ValueError("the zero polynomial does not define a curve")
    c = P.content_x()
    Pt = P.div_x_poly(c).primitive()
    if Pt.deg_y <= 0 and Pt.deg_x <= 0:
        d = IntPoly((1,))
        Q = Pt
    else:
        d = Pt.content_y()
        Q = Pt.div_y_poly(d)
    ok = c.degree <= 0 or gcd(c, c.derivative()).degree <= 0
    if ok and Pt.deg_y >= 1:
        ok = not discriminant_y(Pt).is_zero()
    elif ok and Pt.deg_x >= 1:
        # Ptilde in Z[Y] alone: square-free as a univariate polynomial
        dy = Pt.transpose().lc_y()
        ok = gcd(dy, dy.derivative()).degree <= 0
    return LineSplit(P, c, Pt, d, Q, ok)


# ------------------------------------------------------- refinable reals

class Real:
    """A real number known through shrinking rational enclosures."""

    def interval(self) -> Interval:
        raise NotImplementedError

    @property
    def exact(self) -> Fraction | None:
        return None

    def refine(self, L: int) -> None:
        raise NotImplementedError

    def ball(self, L: int) -> CBall:
        self.refine(L)
        iv = self.interval()
        return CBall.from_interval(iv.lo, iv.hi, L + 16)


class RationalReal(Real):
    def __init__(self, q):
        self.q = Fraction(q)

    def interval(self) -> Interval:
        return Interval(self.q, self.q)

    @property
    def exact(self) -> Fraction:
        return self.q

    def refine(self, L: int) -> None:
        pass

    def __repr__(self) -> str:
        return f"RationalReal({self.q})"


class AlgReal(Real):
    def __init__(self, a: AlgebraicNumber):
        self.alg = a

    def interval(self) -> Interval:
        return self.alg.region

    @property
    def exact(self) -> Fraction | None:
        return self.alg.exact_value

    def refine(self, L: int) -> None:
        self.alg.refine(L)

    def __repr__(self) -> str:
        r = self.alg.region
        return f"AlgReal(~{float(r.mid):.6g})"


class RootReal(Real):
    """A real root of a fiber, refined through its FiberSolution."""

    def __init__(self, sol: FiberSolution, root: FiberRoot):
        self.sol = sol
        self.root = root

    def interval(self) -> Interval:
        return self.root.interval()

    @property
    def exact(self) -> Fraction | None:
        a = self.root._alg
        if a is not None:
            return a.exact_value
        iv = self.root.interval()
        return iv.lo if iv.lo == iv.hi else None

    def refine(self, L: int) -> None:
        if self.root.width() >= Fraction(1, 1 << L):
            self.sol.refine(L, [self.root])

    def __repr__(self) -> str:
        return f"RootReal(~{float(self.interval().mid):.6g}, mult={self.root.multiplicity})"


def _bits_of(w: Fraction) -> int:
    if w <= 0:
        return HARD_CAP
    return max(w.denominator.bit_length() - w.numerator.bit_length(), 0)


def compare(a: Real, b: Real, cap: int | None = None) -> int:
    """Sign of a - b.  Returns 0 for exact equality or, with a cap, when
    the enclosures still meet at 2**-cap."""
    L = 8
    while True:
        ia, ib = a.interval(), b.interval()
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        ea, eb = a.exact, b.exact
        if ea is not None and eb is not None:
            return (ea > eb) - (ea < eb)
        L = max(L * 2, min(_bits_of(ia.width), _bits_of(ib.width)) + 2)
        if cap is not None and L > cap:
            return 0
        if L > HARD_CAP:
            raise RefinementBudgetExceeded("could not separate two real numbers")
        a.refine(L)
        b.refine(L)


def sort_reals(xs: list[Real]) -> list[Real]:
    from functools import cmp_to_key
    return sorted(xs, key=cmp_to_key(lambda u, v: compare(u, v)))


# ---------------------------------------------------------- frame polys

@dataclass
class Frame:
    """Polynomials fixing the special x-values and levels."""

    DX: IntPoly
    DY: IntPoly
    Dstar: IntPoly          # square-free part of D_X * lc_Y(Ptilde)
    SX: IntPoly
    SY: IntPoly
    SXs: IntPoly
    SYs: IntPoly
    CX: Fraction            # Cauchy bound of T_X = S_X (S_X*)'
    CY: Fraction


def frame_polys(Pt: IntPoly2, Q: IntPoly2) -> Frame:
    lcY, lcX = Pt.lc_y(), Pt.lc_x()
    DX = discriminant_y(Pt)
    DY = discriminant_x(Pt) if Pt.deg_x >= 1 else IntPoly((1,))
    RX = resultant_y(Q, Q.dx())
    RY = resultant_x(Pt, Pt.dy()) if Pt.deg_x >= 1 else IntPoly((1,))
    Dstar = square_free_part(DX * lcY) if (DX * lcY).degree > 0 else IntPoly((1,))
    SX = DX * RX * lcY
    SY = DY * RY * lcX
    SXs = square_free_part(SX) if SX.degree > 0 else IntPoly((1,))
    SYs = square_free_part(SY) if SY.degree > 0 else IntPoly((1,))
    CX = cauchy_bound(SX * SXs.derivative()) if SXs.degree > 0 else cauchy_bound(SX)
    CY = cauchy_bound(SY * SYs.derivative()) if SYs.degree > 0 else cauchy_bound(SY)
    return Frame(DX, DY, Dstar, SX, SY, SXs, SYs, CX, CY)


# ------------------------------------------------------------- the grid

@dataclass
class Axis:
    """Special values along one axis with their buffers.

    ``roots`` are the real roots of the square-free frame polynomial S*,
    ``buffers`` the sorted real roots of (S*)' together with the two
    Cauchy bounds; ``lower[k]``/``upper[k]`` index the buffers next to
    ``roots[k]``.
    """

    roots: list[Real]
    buffers: list[Real]
    lower: list[int]
    upper: list[int]


def build_axis(Ss: IntPoly, C: Fraction, buffers: str = "derivative") -> Axis:
    if Ss.degree <= 0:
        return Axis([], [RationalReal(-C), RationalReal(C)], [], [])
    roots = [AlgReal(a) for a in isolate_real_roots(Ss)]
    if buffers == "derivative":
        mids = [AlgReal(a) for a in isolate_real_roots(Ss.derivative())] if Ss.degree > 1 else []
        bufs: list[Real] = [RationalReal(-C)] + mids + [RationalReal(C)]
    else:
        bufs = [RationalReal(-C)]
        for r, s in zip(roots, roots[1:]):
            bufs.append(RationalReal(simplest_dyadic_between(r.interval().hi, s.interval().lo)))
        bufs.append(RationalReal(C))
    lower, upper = [], []
    for r in roots:
        # the buffers are sorted; find the last one below r
        lo, hi = 0, len(bufs) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if compare(bufs[mid], r) < 0:
                lo = mid
            else:
                hi = mid
        lower.append(lo)
        upper.append(hi)
    return Axis(roots, bufs, lower, upper)


def _restrict(a: AlgReal, g: IntPoly) -> AlgReal:
    """Re-express a root of a larger polynomial as a root of its factor g."""
    v = a.exact
    if v is not None:
        return RationalReal(v)
    return AlgReal(AlgebraicNumber(g, a.alg.region))


# ------------------------------------------------------ adjacency boxes

@dataclass
class SpecialFiber:
    """The fiber over one special x-value alpha_i."""

    alpha: Real
    solution: FiberSolution
    m: int
    left: list[int]
    right: list[int]
    crit: list[int]
    boxes: dict[int, BoxCounts]
    vline: int = 0


@dataclass
class CAD:
    split: LineSplit
    frame: Frame | None
    fibers: list[SpecialFiber]
    between: list[int]                 # m'_i for i = 0..N
    samples: list[Fraction]
    vlines_between: list[int]
    stats: dict
    certificates: dict
    buffer_fibers: list = field(default_factory=list)   # FiberSolutions over buffer values

    @property
    def n_special(self) -> int:
        return len(self.fibers)


class _Box:
    """One boundary point: coordinates plus the fiber root that carries it."""

    __slots__ = ("x", "y")

    def __init__(self, x: Real, y: Real):
        self.x, self.y = x, y


class CurveDecomposition:
    """Builds the CAD of a square-free curve step by step."""

    def __init__(self, P: IntPoly2, buffers: str = "derivative", cap: int = JUNCTION_CAP):
        self.P = P
        self.buffers = buffers
        self.cap = cap
        self.stats: dict = {}
        self.cert: dict = {"ambiguous_junctions": 0, "branch_conservation": True,
                           "containment": True, "well_isolated": True}
        self._xf: dict[int, list[RootReal]] = {}
        self._yf: dict[int, list[RootReal]] = {}
        self._junctions: dict = {}

    # ------------------------------------------------------ entry point
    def run(self) -> CAD:
        t0 = time.perf_counter()
        sp = split_lines(self.P)
        if not sp.square_free:
            raise CurveNotSquareFree("input polynomial is not square-free")
        self.split = sp
        Pt = sp.Ptilde
        self.Pt = Pt
        if Pt.deg_x <= 0:
            return self._no_special(t0, horizontal_only=True)
        self.PtT = Pt.transpose()
        self.dX, self.dY = Pt.dx(), Pt.dy()
        fr = frame_polys(Pt, sp.Q)
        self.frame = fr
        self.stats["frame_s"] = time.perf_counter() - t0
        if fr.Dstar.degree <= 0 or count_real_roots(fr.Dstar) == 0:
            return self._no_special(t0)
        t1 = time.perf_counter()
        self.xaxis = build_axis(fr.SXs, fr.CX, self.buffers)
        self.yaxis = build_axis(fr.SYs, fr.CY, self.buffers)
        self.stats["grid_s"] = time.perf_counter() - t1
        # the special x-values are the roots of S_X* that are roots of D*
        g = gcd(fr.SXs, fr.Dstar)
        self.alpha_idx = [k for k, r in enumerate(self.xaxis.roots)
                          if _root_of(g, r)]
        alphas = [_restrict(self.xaxis.roots[k], g) for k in self.alpha_idx]
        t2 = time.perf_counter()
        filt = degree_filtration(fr.Dstar, Pt)
        fibers = []
        for k, a in zip(self.alpha_idx, alphas):
            sol = _fiber_over(Pt, a, filt)
            real = [RootReal(sol, r) for r in sol.real_roots()]
            m = len(real)
            crit = [j + 1 for j, r in enumerate(real) if r.root.multiplicity > 1]
            fibers.append(SpecialFiber(a, sol, m, [1] * (m + 2), [1] * (m + 2), crit, {}))
            fibers[-1].left[0] = fibers[-1].left[m + 1] = 0
            fibers[-1].right[0] = fibers[-1].right[m + 1] = 0
            self._xf[("alpha", k)] = real
        self.stats["fibers_s"] = time.perf_counter() - t2
        self.fibers = fibers
        t3 = time.perf_counter()
        for i, (k, fib) in enumerate(zip(self.alpha_idx, fibers)):
            for j in fib.crit:
                box = self._box(k, fib, j)
                fib.boxes[j] = box
                fib.left[j], fib.right[j] = left_right(box)
                if fib.left[j] != box.flow_left or fib.right[j] != box.flow_right:
                    raise CertificationError(
                        f"branch count mismatch at critical point {i + 1},{j}: "
                        f"formula ({fib.left[j]}, {fib.right[j]}) vs "
                        f"boundary flow ({box.flow_left}, {box.flow_right})")
                if fib.left[j] < 0 or fib.right[j] < 0:
                    raise CertificationError("negative branch count")
        self.stats["boxes_s"] = time.perf_counter() - t3
        t4 = time.perf_counter()
        self._asymptotes(alphas, fibers)
        samples, between = self._samples(alphas)
        self.stats["asymptotes_s"] = time.perf_counter() - t4
        self._conservation(fibers, between)
        vb = self._vertical_lines(alphas, fibers, samples)
        self.stats["total_s"] = time.perf_counter() - t0
        self.stats["n_special"] = len(fibers)
        self.stats["n_critical"] = sum(len(f.crit) for f in fibers)
        self.stats["n_levels"] = len(self.yaxis.roots)
        bufs = {id(r.sol): r.sol for rs in list(self._xf.values()) + list(self._yf.values())
                for r in rs}
        for key, rs in self._xf.items():
            if key[0] == "alpha":
                for r in rs:
                    bufs.pop(id(r.sol), None)
        return CAD(sp, fr, fibers, between, samples, vb, self.stats, self.cert,
                   list(bufs.values()))

    def _no_special(self, t0: float, horizontal_only: bool = False) -> CAD:
        sp = self.split
        Pt = sp.Ptilde
        if Pt.deg_y <= 0 and Pt.deg_x <= 0:
            m = 0
        elif horizontal_only:
            m = count_real_roots(Pt.transpose().lc_y())
        else:
            m = count_real_roots(Pt.eval_x(0))
        v = count_real_roots(sp.c) if sp.c.degree > 0 else 0
        self.stats["total_s"] = time.perf_counter() - t0
        self.stats["n_special"] = 0
        return CAD(sp, getattr(self, "frame", None), [], [m], [Fraction(0)], [v],
                   self.stats, self.cert)

    # ---------------------------------------------------- buffer fibers
    def _xfiber(self, b: int) -> list[RootReal]:
        key = ("buf", b)
        if key not in self._xf:
            base = self.xaxis.buffers[b]
            self._xf[key] = _buffer_fiber(self.Pt, base)
        return self._xf[key]

    def _yfiber(self, b: int) -> list[RootReal]:
        if b not in self._yf:
            base = self.yaxis.buffers[b]
            self._yf[b] = _buffer_fiber(self.PtT, base)
        return self._yf[b]

    def _level_of(self, beta: RootReal) -> int:
        """Index of the level gamma_k equal to beta."""
        ys = self.yaxis.roots
        L = 8
        while True:
            iv = beta.interval()
            hits = [k for k, g in enumerate(ys) if g.interval().overlaps(iv)]
            if len(hits) == 1:
                return hits[0]
            if not hits:
                raise CertificationError("critical point on no special level")
            L *= 2
            if L > HARD_CAP:
                raise RefinementBudgetExceeded("level matching")
            beta.refine(L)
            for k in hits:
                ys[k].refine(L)

    # ---------------------------------------------------------- junctions
    def _junction(self, xkey, a: Real, etas: list[RootReal], ykey, c: Real,
                  xis: list[RootReal]):
        """Decide whether Ptilde(a, c) = 0.

        Returns (eta, xi, ambiguous): the fiber roots sitting at the
        junction, or (None, None, False) when no curve point is there.
        After the call every other eta is separated from c and every
        other xi from a.
        """
        key = (xkey, ykey)
        if key in self._junctions:
            return self._junctions[key]
        zero = self._exact_zero(a, c)
        L = 8
        ambiguous = False
        while True:
            ia, ic = a.interval(), c.interval()
            eh = [e for e in etas if e.interval().overlaps(ic)]
            xh = [x for x in xis if x.interval().overlaps(ia)]
            if zero is True:
                if len(eh) == 1 and len(xh) == 1:
                    res = (eh[0], xh[0], False)
                    break
            else:
                if not eh and not xh:
                    res = (None, None, False)
                    break
                if zero is None:
                    if not eh or not xh:
                        zero = False
                    elif L > self.cap and len(eh) == 1 and len(xh) == 1:
                        ambiguous = True
                        res = (eh[0], xh[0], True)
                        break
            L = L * 2
            if L > HARD_CAP:
                raise RefinementBudgetExceeded("junction could not be resolved")
            a.refine(L)
            c.refine(L)
            for e in eh:
                e.refine(L)
            for x in xh:
                x.refine(L)
        if ambiguous:
            self.cert["ambiguous_junctions"] += 1
        self._junctions[key] = res
        return res

    def _exact_zero(self, a: Real, c: Real) -> bool | None:
        va, vc = a.exact, c.exact
        if va is not None and vc is not None:
            return self.Pt.eval_exact(va, vc) == 0
        if va is not None:
            f = self.Pt.eval_x(va)
            return vanishes_at(f, c.alg) if isinstance(c, AlgReal) else None
        if vc is not None:
            f = self.Pt.eval_y(vc)
            return vanishes_at(f, a.alg) if isinstance(a, AlgReal) else None
        return None

    # -------------------------------------------------------------- slopes
    def slope_sign(self, x: Real, y: Real) -> int:
        """Sign of -dX/dY of Ptilde at a regular curve point."""
        ex, ey = x.exact, y.exact
        if ex is not None and ey is not None:
            sx = _sgn(self.dX.eval_exact(ex, ey))
            sy = _sgn(self.dY.eval_exact(ex, ey))
            if sx and sy:
                return -sx * sy
            raise CertificationError("slope undefined at a boundary point")
        L = 16
        while True:
            bx, by = x.ball(L), y.ball(L)
            prec = 2 * L + 32
            sx = self.dX.eval_ball(bx, by, prec).real_sign()
            sy = self.dY.eval_ball(bx, by, prec).real_sign()
            if sx and sy:
                return -sx * sy
            L *= 2
            if L > HARD_CAP:
                raise CertificationError("slope sign could not be certified")

    # ----------------------------------------------------------------- box
    def _box(self, k: int, fib: SpecialFiber, j: int) -> BoxCounts:
        xa, ya = self.xaxis, self.yaxis
        alpha = fib.alpha
        real = self._xf[("alpha", k)]
        beta = real[j - 1]
        lev = self._level_of(beta)
        gm_i, gp_i = ya.lower[lev], ya.upper[lev]
        am_i, ap_i = xa.lower[k], xa.upper[k]
        gm, gp = ya.buffers[gm_i], ya.buffers[gp_i]
        am, ap = xa.buffers[am_i], xa.buffers[ap_i]
        eta_m, eta_p = self._xfiber(am_i), self._xfiber(ap_i)
        xi_m, xi_p = self._yfiber(gm_i), self._yfiber(gp_i)
        others = [r for r in real if r is not beta]
        gamma = ya.roots[lev]
        xs = {"am": (("buf", am_i), am, eta_m), "a": (("alpha", k), alpha, others),
              "ap": (("buf", ap_i), ap, eta_p)}
        ys = {"gm": (gm_i, gm, xi_m), "gp": (gp_i, gp, xi_p)}
        J = {}
        for xn, (xk, xv, etas) in xs.items():
            for yn, (yk, yv, xis) in ys.items():
                J[(xn, yn)] = self._junction(xk, xv, etas, yk, yv, xis)
        b = BoxCounts()
        for (xn, yn), (e, x, amb) in J.items():
            if amb:
                b.ambiguous.append(f"{xn},{yn}")
        eq = {key: J[key][0] is not None for key in J}
        b.gp_eq_am, b.gp_eq_a, b.gp_eq_ap = (int(eq[("am", "gp")]), int(eq[("a", "gp")]),
                                             int(eq[("ap", "gp")]))
        b.gm_eq_am, b.gm_eq_a, b.gm_eq_ap = (int(eq[("am", "gm")]), int(eq[("a", "gm")]),
                                             int(eq[("ap", "gm")]))

        def corner_pt(xn, yn):
            e = J[(xn, yn)][0]
            if e is None:
                return None
            return _Box(xs[xn][1], e)

        # vertical sides: etas strictly between the levels
        def side(xn):
            xv, etas = xs[xn][1], xs[xn][2]
            skip = {id(J[(xn, "gm")][0]), id(J[(xn, "gp")][0])}
            inside, above, below = [], [], []
            for e in etas:
                if id(e) in skip:
                    continue
                if compare(e, gm) > 0 and compare(e, gp) < 0:
                    inside.append(e)
            for e in inside:
                s = compare(e, beta if xn == "a" else gamma, None if xn == "a" else self.cap)
                if s > 0:
                    above.append(_Box(xv, e))
                elif s < 0:
                    below.append(_Box(xv, e))
            return inside, above, below

        in_m, am_above, am_below = side("am")
        in_p, ap_above, ap_below = side("ap")
        in_a, a_above, a_below = side("a")
        b.L_am, b.L_ap = len(in_m), len(in_p)
        b.a_gt, b.a_lt = len(a_above), len(a_below)

        # horizontal sides: xis strictly between the buffers, split by alpha
        def edge(yn):
            yv, xis = ys[yn][1], ys[yn][2]
            skip = {id(J[(xn, yn)][1]) for xn in ("am", "a", "ap")}
            lt, gt = [], []
            for x in xis:
                if id(x) in skip:
                    continue
                if compare(x, am) > 0 and compare(x, ap) < 0:
                    (lt if compare(x, alpha) < 0 else gt).append(_Box(x, yv))
            return lt, gt

        gp_lt, gp_gt = edge("gp")
        gm_lt, gm_gt = edge("gm")
        b.gp_lt, b.gp_gt, b.gm_lt, b.gm_gt = len(gp_lt), len(gp_gt), len(gm_lt), len(gm_gt)
        # boxes carry the y-fiber roots as the moving coordinate; make them consistent
        cp = {key: corner_pt(*key) for key in J}

        slope = {}

        def sl(pt):
            if pt is None:
                return None
            key = id(pt)
            if key not in slope:
                slope[key] = self.slope_sign(pt.x, pt.y)
            return slope[key]

        def first_sign(seq):
            for pt in seq:
                if pt is not None:
                    return sl(pt)
            return 1

        # slope lists; sides at alpha are read from the critical point outwards
        b.sigma_p = first_sign(am_above + [cp[("am", "gp")]] + gp_lt + [cp[("a", "gp")]]
                               + a_above[::-1])
        b.sigma_m = first_sign(am_below[::-1] + [cp[("am", "gm")]] + gm_lt + [cp[("a", "gm")]]
                               + a_below)
        b.tau_p = first_sign(ap_above + [cp[("ap", "gp")]] + gp_gt + [cp[("a", "gp")]]
                             + a_above[::-1])
        b.tau_m = first_sign(ap_below[::-1] + [cp[("ap", "gm")]] + gm_gt + [cp[("a", "gm")]]
                             + a_below)
        # independent count from the slope of every boundary point
        fl = len(in_m) - len(in_a)
        fr = len(in_p) - len(in_a)
        for pt in gp_lt:
            fl += 1 if sl(pt) < 0 else -1
        for pt in gm_lt:
            fl += 1 if sl(pt) > 0 else -1
        for pt in gp_gt:
            fr += 1 if sl(pt) > 0 else -1
        for pt in gm_gt:
            fr += 1 if sl(pt) < 0 else -1
        if cp[("am", "gp")] is not None and sl(cp[("am", "gp")]) < 0:
            fl += 1
        if cp[("am", "gm")] is not None and sl(cp[("am", "gm")]) > 0:
            fl += 1
        if cp[("a", "gp")] is not None:
            if sl(cp[("a", "gp")]) > 0:
                fl -= 1
            else:
                fr -= 1
        if cp[("a", "gm")] is not None:
            if sl(cp[("a", "gm")]) < 0:
                fl -= 1
            else:
                fr -= 1
        if cp[("ap", "gp")] is not None and sl(cp[("ap", "gp")]) > 0:
            fr += 1
        if cp[("ap", "gm")] is not None and sl(cp[("ap", "gm")]) < 0:
            fr += 1
        b.flow_left, b.flow_right = fl, fr
        self._check_containment(b, J, xs, ys)
        return b

    def _check_containment(self, b, J, xs, ys) -> None:
        """Every non-junction root is separated from the box coordinates."""
        for xn, (_, xv, etas) in xs.items():
            for yn, (_, yv, _) in ys.items():
                e_eq = J[(xn, yn)][0]
                b.separations.append((yv, [(e, e is e_eq) for e in etas]))
        for yn, (_, yv, xis) in ys.items():
            for xn, (_, xv, _) in xs.items():
                x_eq = J[(xn, yn)][1]
                b.separations.append((xv, [(x, x is x_eq) for x in xis]))
        if not _separations_hold(b.separations):
            self.cert["containment"] = False
            raise CertificationError("containment check failed on a box side")

    # ---------------------------------------------------------- asymptotes
    def _asymptotes(self, alphas: list[Real], fibers: list[SpecialFiber]) -> None:
        lows, highs = [], []
        for k in self.alpha_idx:
            for r in self._xf[("alpha", k)]:
                iv = r.interval()
                lows.append(iv.lo)
                highs.append(iv.hi)
        C = self.frame.CY
        y0 = Fraction(int(min([-C] + lows)) - 1)
        y1 = Fraction(int(max([C] + highs)) + 1)
        N = len(alphas)
        for y, below in ((y0, True), (y1, False)):
            f = self.Pt.eval_y(y)
            fx = self.dX.eval_y(y)
            fy = self.dY.eval_y(y)
            for z in isolate_real_roots(f):
                if z.multiplicity != 1:
                    raise CertificationError("asymptote level meets a critical point")
                s = -sign_at(fx, z) * sign_at(fy, z)
                if s == 0:
                    raise CertificationError("undefined slope at asymptote level")
                zr = AlgReal(z)
                strip = _strip_of(zr, alphas)
                if below:
                    if s > 0 and strip >= 1:
                        fibers[strip - 1].right[0] += 1
                    elif s < 0 and strip < N:
                        fibers[strip].left[0] += 1
                else:
                    top = lambda i: fibers[i].m + 1
                    if s < 0 and strip >= 1:
                        fibers[strip - 1].right[top(strip - 1)] += 1
                    elif s > 0 and strip < N:
                        fibers[strip].left[top(strip)] += 1
        self.stats["asymptote_levels"] = (str(y0), str(y1))

    def _samples(self, alphas: list[Real]) -> tuple[list[Fraction], list[int]]:
        N = len(alphas)
        samples = []
        for i in range(N + 1):
            if i == 0:
                q = Fraction(int(alphas[0].interval().lo) - 1)
            elif i == N:
                q = Fraction(int(alphas[-1].interval().hi) + 1)
            else:
                lo, hi = alphas[i - 1].interval().hi, alphas[i].interval().lo
                if not lo < hi:
                    compare(alphas[i - 1], alphas[i])
                    lo, hi = alphas[i - 1].interval().hi, alphas[i].interval().lo
                q = simplest_dyadic_between(lo, hi)
            samples.append(q)
        between = [count_real_roots(self.Pt.eval_x(q)) for q in samples]
        return samples, between

    def _conservation(self, fibers: list[SpecialFiber], between: list[int]) -> None:
        for i, f in enumerate(fibers):
            if sum(f.left) != between[i] or sum(f.right) != between[i + 1]:
                self.cert["branch_conservation"] = False
                raise CertificationError(
                    f"branch conservation fails at special fiber {i + 1}: "
                    f"left {f.left} vs {between[i]}, right {f.right} vs {between[i + 1]}")

    # ------------------------------------------------------ vertical lines
    def _vertical_lines(self, alphas, fibers, samples) -> list[int]:
        c = self.split.c
        N = len(alphas)
        vb = [0] * (N + 1)
        if c.degree <= 0:
            return vb
        cs = square_free_part(c)
        g = gcd(cs, self.frame.Dstar)
        for a, f in zip(alphas, fibers):
            f.vline = int(g.degree > 0 and _root_of(g, a))
        c2 = exact_div(cs, g)
        if c2.degree > 0:
            for z in isolate_real_roots(c2):
                vb[_strip_of(AlgReal(z), alphas)] += 1
        return vb


# ------------------------------------------------------------- helpers

def _separations_hold(records) -> bool:
    """Junction roots meet their coordinate, all other roots miss it."""
    for coord, roots in records:
        iv = coord.interval()
        for r, is_junction in roots:
            if r.interval().overlaps(iv) != is_junction:
                return False
    return True


def _sgn(q) -> int:
    return (q > 0) - (q < 0)


def _root_of(g: IntPoly, r: Real) -> bool:
    v = r.exact
    if v is not None:
        return g.sign_at(v) == 0
    return vanishes_at(g, r.alg)


def _strip_of(z: Real, alphas: list[Real]) -> int:
    """Number of alphas below z (z is not one of them)."""
    lo, hi = 0, len(alphas)
    while lo < hi:
        mid = (lo + hi) // 2
        if compare(alphas[mid], z) < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _fiber_over(F: IntPoly2, a: Real, filt) -> FiberSolution:
    v = a.exact
    if v is not None:
        return fiber_at_rational(F, v)
    z = a.alg
    for n, k, p in filt.classes():
        if vanishes_at(p, z):
            return FiberSolution(F, z, n, k).solve()
    raise ArithmeticError("special value not classified by the filtration")


def _buffer_fiber(F: IntPoly2, base: Real) -> list[RootReal]:
    v = base.exact
    if v is not None:
        sol = fiber_at_rational(F, v)
    else:
        sol = FiberSolution(F, base.alg, F.deg_y, 0).solve()
    return [RootReal(sol, r) for r in sol.real_roots()]


def decompose(P: IntPoly2, buffers: str = "derivative") -> CAD:
    """Refined CAD of the curve P = 0, with its certificates rechecked."""
    cad = CurveDecomposition(P, buffers).run()
    bad = [k for k, ok in audit(cad).items() if not ok]
    if bad:
        raise CertificationError("certificate audit failed: " + ", ".join(bad))
    return cad


def _well_isolated(sol: FiberSolution) -> bool:
    """Each region is small against its distance to the other regions.

    Intervals need width * 32n <= distance, disks radius * 64n <= distance,
    with n the degree of the fiber polynomial.
    """
    n = max(sol.n, 1)
    regs = [r.disk() for r in sol.roots]
    for i, r in enumerate(sol.roots):
        others = [e for j, e in enumerate(regs) if j != i]
        if not others:
            continue
        d = regs[i]
        dist = min(d.center_distance_lower(e) - d.radius - e.radius for e in others)
        if isinstance(r.region, Interval):
            if not r.width() * 32 * n <= dist:
                return False
        elif not d.radius * 64 * n <= dist:
            return False
    return True


def audit(cad: CAD) -> dict:
    """Recheck the certificates of a finished decomposition from raw data.

    Returns a dict of booleans; every entry must be True.
    """
    out = {"well_isolated": all(_well_isolated(f.solution) for f in cad.fibers)}
    ok = len(cad.between) == len(cad.fibers) + 1
    for i, f in enumerate(cad.fibers):
        ok = ok and sum(f.left) == cad.between[i] and sum(f.right) == cad.between[i + 1]
        ok = ok and min(f.left + f.right, default=0) >= 0
        ok = ok and len(f.left) == len(f.right) == f.m + 2
    out["branch_conservation"] = ok
    out["well_isolated"] = out["well_isolated"] and all(
        _well_isolated(sol) for sol in cad.buffer_fibers)
    out["containment"] = all(_separations_hold(b.separations)
                             for f in cad.fibers for b in f.boxes.values())
    out["flow_agreement"] = all(
        (f.left[j], f.right[j]) == (b.flow_left, b.flow_right)
        for f in cad.fibers for j, b in f.boxes.items())
    cad.certificates.update(out)
    return out
