"""Roots of F(z, Y) over the roots z of a univariate polynomial R.

The fiber degree n(z) and the gcd degree k(z) are read off exact
filtrations of R.  With m(z) = n(z) - k(z) known, the roots of F(z, Y)
are approximated, grouped into exactly m(z) clusters and each cluster is
certified by a Pellet count on ball Taylor coefficients.  Over rational
points the fiber is an integer polynomial and is solved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .bpoly import IntPoly2, resultant_y, subdiscriminants_y
from .exactnum import (
    CBall,
    Disk,
    Interval,
    RefinementBudgetExceeded,
    floor_dyadic,
    int_horner_ball,
    sqrt_lower,
)
from .roots import (
    MAX_PREC,
    AlgebraicNumber,
    aberth,
    cluster,
    isolate_complex_roots,
    isolate_real_roots,
    make_well_isolating,
    mp_to_fraction,
    pellet_holds,
    sign_at,
    taylor_shift_balls,
    vanishes_at,
    _log2_floor,
)
from .upoly import IntPoly, exact_div, gcd, square_free_decomposition, square_free_part


class FiberIdenticallyZero(ValueError):
    """F(z, .) vanishes identically for some root z of R."""


# ------------------------------------------------------------- filtrations

def _one() -> IntPoly:
    return IntPoly((1,))


@dataclass
class DegreeFiltration:
    """Exact split of R* by fiber degree and by gcd degree.

    ``R_le[l]`` has as roots the z with deg F(z, .) <= l, ``R_deg[l]`` those
    with degree exactly l, and ``R_gcd[(l, k)]`` those with degree l whose
    fiber has a gcd with its Y-derivative of degree exactly k.
    """

    Rstar: IntPoly
    F: IntPoly2
    R_le: dict[int, IntPoly] = field(default_factory=dict)
    R_deg: dict[int, IntPoly] = field(default_factory=dict)
    R_ge: dict[tuple[int, int], IntPoly] = field(default_factory=dict)
    R_gcd: dict[tuple[int, int], IntPoly] = field(default_factory=dict)
    sdisc: dict[int, list[IntPoly]] = field(default_factory=dict)

    def classes(self) -> list[tuple[int, int, IntPoly]]:
        """(n, k, R*_{n,k}) for every nonconstant factor."""
        return [(l, k, p) for (l, k), p in sorted(self.R_gcd.items()) if p.degree > 0]


def degree_filtration(R: IntPoly, F: IntPoly2, with_gcd: bool = True) -> DegreeFiltration:
    if R.is_zero():
        raise ValueError("R must be nonzero")
    Rs = square_free_part(R) if R.degree > 0 else _one()
    filt = DegreeFiltration(Rs, F)
    ny = max(F.deg_y, 0)
    filt.R_le[ny] = Rs
    for l in range(ny, 0, -1):
        cur = filt.R_le[l]
        fl = F.coeff_y(l)
        filt.R_le[l - 1] = gcd(cur, fl) if cur.degree > 0 and not fl.is_zero() else (
            cur if fl.is_zero() else _one())
    low = filt.R_le[0]
    f0 = F.coeff_y(0)
    bad = low if f0.is_zero() else (gcd(low, f0) if low.degree > 0 else _one())
    if bad.degree > 0:
        raise FiberIdenticallyZero("F(z, .) is identically zero at a root of R")
    for l in range(ny, -1, -1):
        below = filt.R_le[l - 1] if l > 0 else _one()
        filt.R_deg[l] = exact_div(filt.R_le[l], below)
    if with_gcd:
        for l in range(ny, -1, -1):
            _gcd_filtration(filt, l)
    return filt


def _gcd_filtration(filt: DegreeFiltration, l: int) -> None:
    Rl = filt.R_deg[l]
    if l <= 1 or Rl.degree <= 0:
        filt.R_ge[(l, 0)] = Rl
        filt.R_gcd[(l, 0)] = Rl
        return
    Fl = filt.F.truncate_y(l)
    sd = subdiscriminants_y(Fl)
    filt.sdisc[l] = sd
    cur = Rl
    filt.R_ge[(l, 0)] = cur
    for k in range(l):
        s = sd[k]
        nxt = cur if s.is_zero() else (gcd(cur, s) if cur.degree > 0 else _one())
        filt.R_ge[(l, k + 1)] = nxt
        filt.R_gcd[(l, k)] = exact_div(cur, nxt)
        cur = nxt
    if cur.degree > 0:
        raise ArithmeticError("gcd filtration did not terminate")


def fiber_degrees(R: IntPoly, F: IntPoly2) -> list[tuple[AlgebraicNumber, int, int]]:
    """(z, n(z), k(z)) for every distinct complex root z of R."""
    out = []
    for z, n, k in _classified_roots(R, F):
        out.append((z, n, k))
    return out


def _classified_roots(R: IntPoly, F: IntPoly2, real_only: bool = False):
    filt = degree_filtration(R, F)
    sqf = square_free_decomposition(R)
    out = []
    for n, k, p in filt.classes():
        for g, mult in sqf:
            h = gcd(p, g)
            if h.degree <= 0:
                continue
            roots = isolate_real_roots(h) if real_only else isolate_complex_roots(h)
            for z in roots:
                z.multiplicity = mult
                out.append((z, n, k))
    return out


# ---------------------------------------------------------- fiber roots

class FiberRoot:
    """One distinct root z' of F(z, .): its region and multiplicity."""

    __slots__ = ("region", "multiplicity", "is_real", "sep", "_alg")

    def __init__(self, region, multiplicity: int, is_real: bool, alg: AlgebraicNumber | None = None):
        self.region = region
        self.multiplicity = multiplicity
        self.is_real = is_real
        self.sep: Fraction | None = None
        self._alg = alg

    def disk(self) -> Disk:
        if isinstance(self.region, Interval):
            r = self.region
            return Disk(r.mid, Fraction(0), r.width / 2)
        return self.region

    def interval(self) -> Interval:
        """Real enclosure of a real root."""
        if not self.is_real:
            raise ValueError("interval of a non-real root")
        if isinstance(self.region, Interval):
            return self.region
        d = self.region
        return Interval(d.re - d.radius, d.re + d.radius)

    def width(self) -> Fraction:
        if isinstance(self.region, Interval):
            return self.region.width
        return 2 * self.region.radius

    def center(self) -> tuple[Fraction, Fraction]:
        if isinstance(self.region, Interval):
            return self.region.mid, Fraction(0)
        return self.region.re, self.region.im

    def __repr__(self) -> str:
        re, im = self.center()
        return (f"FiberRoot({float(re):.6g}{float(im):+.6g}j, width={float(self.width()):.3g}, "
                f"mult={self.multiplicity}, real={self.is_real})")


class FiberSolution:
    """All roots of F(z, .) for one base point z, refinable on demand."""

    def __init__(self, F: IntPoly2, base: AlgebraicNumber | Fraction, n: int, k: int,
                 base_multiplicity: int = 1):
        self.F = F
        self.base = base
        self.base_multiplicity = base_multiplicity
        self.n = n
        self.k = k
        self.roots: list[FiberRoot] = []
        self.prec = 0
        self._approx = None

    @property
    def m(self) -> int:
        return self.n - self.k

    @property
    def base_is_real(self) -> bool:
        return isinstance(self.base, Fraction) or self.base.is_real

    def base_value(self) -> Fraction | None:
        if isinstance(self.base, Fraction):
            return self.base
        return self.base.exact_value

    def real_roots(self) -> list[FiberRoot]:
        rr = [r for r in self.roots if r.is_real]
        rr.sort(key=lambda r: r.center()[0])
        return rr

    def __repr__(self) -> str:
        return f"FiberSolution(n={self.n}, k={self.k}, roots={self.roots})"

    # solving
    def solve(self) -> "FiberSolution":
        if self.n <= 0:
            self.roots = []
            return self
        val = self.base_value()
        if val is not None:
            self._solve_exact(val)
        else:
            prec = 64
            while not self._solve_balls(prec):
                prec *= 2
                if prec > MAX_PREC:
                    raise RefinementBudgetExceeded("fiber certification failed")
        self._estimate_sep()
        return self

    def _solve_exact(self, val: Fraction) -> None:
        f = self.F.eval_x(val)
        if f.degree != self.n:
            raise ArithmeticError("fiber degree mismatch at a rational point")
        roots = isolate_complex_roots(f)
        if len(roots) != self.m:
            raise ArithmeticError("fiber distinct-root count mismatch")
        make_well_isolating(roots, self.n)
        self.roots = [FiberRoot(a.region, a.multiplicity, a.is_real, a) for a in roots]
        self.prec = 0

    def _coeff_balls(self, prec: int) -> list[CBall]:
        F = self.F
        extra = F.bits() + 8 * max(F.deg_x, 1) + 16
        zb = self.base.ball(prec + extra)
        return [int_horner_ball(F.coeff_y(i).c, zb, prec + extra) for i in range(self.n + 1)]

    def _solve_balls(self, prec: int) -> bool:
        co = self._coeff_balls(prec)
        if co[self.n].contains_zero():
            return False
        centers = [mpmath.mpc(*map(_mpf_of, b.center())) for b in co]
        approx = aberth(centers, prec, init=self._approx if self._approx and len(self._approx) == self.n else None)
        self._approx = approx
        with mpmath.workprec(prec + 20):
            groups = cluster(approx, self.m)
        if len(groups) != self.m:
            return False
        work = prec + 32
        disks: list[tuple[Disk, int]] = []
        for gi, grp in enumerate(groups):
            k = len(grp)
            with mpmath.workprec(prec + 20):
                c = sum((approx[i] for i in grp), mpmath.mpc(0)) / k
            re, im = mp_to_fraction(c)
            re, im = floor_dyadic(re, prec), floor_dyadic(im, prec)
            others = [approx[i] for gj, g2 in enumerate(groups) if gj != gi for i in g2]
            with mpmath.workprec(prec + 20):
                r_in = max((float(abs(approx[i] - c)) for i in grp), default=0.0)
                r_out = min((float(abs(w - c)) for w in others), default=None)
            floor_r = Fraction(1, 1 << max(8, prec // (2 * k)))
            lo = max(Fraction(r_in) * 2, floor_r)
            hi = Fraction(r_out) / 3 if r_out is not None else None
            if self.base_is_real and (abs(im) <= 2 * lo or (hi is not None and abs(im) < hi)):
                snapped = True
            else:
                snapped = False
            got = None
            for center_im in ((Fraction(0), im) if snapped else (im,)):
                shifted = taylor_shift_balls(co, CBall.from_disk(re, center_im, 0, work), work)
                rho = lo
                limit = hi if hi is not None else _cauchy_upper(shifted) * 2 + lo
                while rho <= limit:
                    if center_im != 0 and rho >= abs(center_im) and self.base_is_real:
                        break
                    if pellet_holds(shifted, rho, k):
                        got = (center_im, rho)
                        break
                    rho *= 2
                if got:
                    break
            if got is None:
                return False
            disks.append((Disk(re, got[0], got[1]), k))
        if sum(k for _, k in disks) != self.n:
            return False
        for i in range(len(disks)):
            for j in range(i + 1, len(disks)):
                if disks[i][0].overlaps(disks[j][0]):
                    return False
        # well isolation: radius small against the distance to other disks
        nn = max(self.n, 1)
        for i, (d, _) in enumerate(disks):
            dist = min((d.center_distance_lower(e) - d.radius - e.radius
                        for j, (e, _) in enumerate(disks) if j != i), default=None)
            if dist is not None and d.radius * 65 * nn >= dist:
                return False
        new_roots = []
        for d, k in disks:
            is_real = self.base_is_real and d.im == 0
            new_roots.append(FiberRoot(d, k, is_real))
        if self.roots:
            # keep nesting: each new disk must lie in exactly one old region
            matched = [None] * len(new_roots)
            for i, nr in enumerate(new_roots):
                holders = [j for j, old in enumerate(self.roots) if old.disk().contains_disk(nr.disk())]
                if len(holders) != 1:
                    return False
                matched[i] = holders[0]
            if sorted(matched) != list(range(len(self.roots))):
                return False
            for nr, j in zip(new_roots, matched):
                old = self.roots[j]
                if old.multiplicity != nr.multiplicity or old.is_real != nr.is_real:
                    return False
                old.region = nr.region
        else:
            self.roots = new_roots
        self.prec = prec
        return True

    def _estimate_sep(self) -> None:
        for i, r in enumerate(self.roots):
            ci = r.center()
            best = None
            for j, s in enumerate(self.roots):
                if i != j:
                    cj = s.center()
                    dd = sqrt_lower((ci[0] - cj[0]) ** 2 + (ci[1] - cj[1]) ** 2)
                    best = dd if best is None or dd < best else best
            r.sep = best

    # refinement
    def refine(self, L: int, which: Sequence[FiberRoot] | None = None) -> "FiberSolution":
        """Shrink the selected regions (default: all) below diameter 2**-L."""
        target = Fraction(1, 1 << L)
        sel = list(self.roots if which is None else which)
        if all(r.width() < target for r in sel):
            return self
        if self.base_value() is not None:
            for r in sel:
                if r._alg is not None:
                    r._alg.refine(L)
                    r.region = r._alg.region
            return self
        prec = max(self.prec * 2, 64)
        while any(r.width() >= target for r in sel):
            if self._solve_balls(prec):
                if all(r.width() < target for r in sel):
                    break
            prec *= 2
            if prec > MAX_PREC * 4:
                raise RefinementBudgetExceeded("fiber refinement failed")
        self._estimate_sep()
        return self


def _mpf_of(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _cauchy_upper(shifted: Sequence[CBall]) -> Fraction:
    n = len(shifted) - 1
    lc = shifted[n].abs_lower()
    if lc <= 0:
        return Fraction(1 << 64)
    return sum((b.abs_upper() for b in shifted[:n]), Fraction(0)) / lc + 1


def solve_fiber(F: IntPoly2, base: AlgebraicNumber | Fraction, n: int, k: int,
                base_multiplicity: int = 1) -> FiberSolution:
    return FiberSolution(F, base, n, k, base_multiplicity).solve()


def fiber_at_rational(F: IntPoly2, x: Fraction) -> FiberSolution:
    """Fiber over a rational point, with degrees read off directly."""
    x = Fraction(x)
    f = F.eval_x(x)
    if f.is_zero():
        raise FiberIdenticallyZero(f"F({x}, .) is identically zero")
    n = f.degree
    m = len(isolate_complex_roots(f)) if n > 0 else 0
    return FiberSolution(F, x, n, n - m).solve()


def isolate_fiber_roots(R: IntPoly, F: IntPoly2, real_only: bool = False) -> list[FiberSolution]:
    """Fibers of F over every distinct root of R (real roots only if asked)."""
    out = []
    for z, n, k in _classified_roots(R, F, real_only):
        out.append(FiberSolution(F, z, n, k, z.multiplicity).solve())
    return out


def refine_fiber_roots(sol: FiberSolution, L: int, which=None) -> FiberSolution:
    return sol.refine(L, which)


# -------------------------------------------------------------- matching

@dataclass
class MatchedRoot:
    root: FiberRoot          # root of H = F * G
    mult_f: int
    mult_g: int
    sign_f: int | None = None   # sign of F(z, z') when it does not vanish (real case)
    sign_g: int | None = None
    vertical: bool = False      # one of the two vanishes on the whole fiber

    @property
    def membership(self) -> str:
        if self.vertical or (self.mult_f and self.mult_g):
            return "both"
        return "F" if self.mult_f else "G"


@dataclass
class MatchedFiber:
    base: AlgebraicNumber | Fraction
    roots: list[MatchedRoot]


def _fiber_for(F: IntPoly2, z) -> FiberSolution:
    if isinstance(z, Fraction):
        return fiber_at_rational(F, z)
    val = z.exact_value
    if val is not None:
        return fiber_at_rational(F, val)
    filt = degree_filtration(z.defining, F)
    for n, k, p in filt.classes():
        if vanishes_at(p, z):
            return FiberSolution(F, z, n, k, z.multiplicity).solve()
    # deg F(z, .) == 0 case lands in R_gcd[(0, 0)] which is covered above
    raise ArithmeticError("root not classified by the filtration")


def _constant_sign(F: IntPoly2, z) -> int:
    if isinstance(z, Fraction):
        return F.coeff_y(0).sign_at(z)
    return sign_at(F.coeff_y(0), z)


def _lc_sign(F: IntPoly2, z, n: int) -> int:
    p = F.coeff_y(n)
    if isinstance(z, Fraction):
        return p.sign_at(z)
    return sign_at(p, z)


def _vanishes_identically(F: IntPoly2, z) -> bool:
    c = F.content_x() if not F.is_zero() else IntPoly()
    if c.is_zero():
        return True
    if c.degree <= 0:
        return False
    if isinstance(z, Fraction):
        return c.sign_at(z) == 0
    return vanishes_at(c, z)


def match_fiber_roots_at(F: IntPoly2, G: IntPoly2, z) -> MatchedFiber:
    """Classify the roots of (F G)(z, .) as roots of F, G or both.

    If one factor vanishes identically on the fiber, every root of the
    other one is reported as common (its own multiplicity is then 0).
    """
    zf, zg = _vanishes_identically(F, z), _vanishes_identically(G, z)
    if zf and zg:
        raise FiberIdenticallyZero("both polynomials vanish on the fiber")
    if zf or zg:
        other = G if zf else F
        sol = _fiber_for(other, z)
        out = [MatchedRoot(r, 0 if zf else r.multiplicity, r.multiplicity if zf else 0)
               for r in sol.roots]
        for mr in out:
            mr.vertical = True
        return MatchedFiber(z, out)
    H = F * G
    fh = _fiber_for(H, z)
    ff = _fiber_for(F, z)
    fg = _fiber_for(G, z)
    L = 8
    while True:
        assign_f = _assign(ff, fh)
        assign_g = _assign(fg, fh)
        if assign_f is not None and assign_g is not None:
            break
        L *= 2
        if L > 4096:
            raise RefinementBudgetExceeded("fiber matching did not converge")
        for s in (fh, ff, fg):
            if s.roots:
                s.refine(L)
    out = []
    for i, hr in enumerate(fh.roots):
        mf = assign_f.get(i, 0)
        mg = assign_g.get(i, 0)
        if mf + mg != hr.multiplicity:
            raise ArithmeticError("multiplicity identity violated")
        out.append(MatchedRoot(hr, mf, mg))
    if fh.base_is_real:
        _fill_signs(out, F, G, z, ff, fg)
    return MatchedFiber(z, out)


def _assign(part: FiberSolution, whole: FiberSolution) -> dict[int, int] | None:
    """Map each root of ``part`` to the unique root of ``whole`` it meets."""
    res: dict[int, int] = {}
    for r in part.roots:
        hits = [i for i, h in enumerate(whole.roots) if h.disk().overlaps(r.disk())]
        if len(hits) != 1:
            return None
        res[hits[0]] = res.get(hits[0], 0) + r.multiplicity
    return res


def _fill_signs(out: list[MatchedRoot], F, G, z, ff, fg) -> None:
    for which, sol, attr, P in (("f", ff, "sign_f", F), ("g", fg, "sign_g", G)):
        zz = z
        n = sol.n if sol is not None else 0
        lead = _lc_sign(P, zz, n)
        real = sol.real_roots() if sol is not None else []
        for mr in out:
            if not mr.root.is_real:
                continue
            if (mr.mult_f if which == "f" else mr.mult_g):
                setattr(mr, attr, 0)
                continue
            c = mr.root.center()[0]
            above = sum(r.multiplicity for r in real if r.center()[0] > c)
            setattr(mr, attr, lead * (-1) ** above)


def match_fiber_roots(R: IntPoly, F: IntPoly2, G: IntPoly2) -> list[MatchedFiber]:
    """Matched fibers of F and G over every distinct complex root of R."""
    out = []
    for z in isolate_complex_roots(R):
        out.append(match_fiber_roots_at(F, G, z))
    return out


@dataclass
class Solution:
    x: AlgebraicNumber
    y: FiberRoot
    mult_f: int
    mult_g: int


def solve_system(F: IntPoly2, G: IntPoly2) -> list[Solution]:
    """All complex solutions of F = G = 0 as (x-root, fiber disk) pairs."""
    R = resultant_y(F, G)
    if R.is_zero():
        raise ValueError("F and G are not coprime")
    if R.degree <= 0:
        return []
    sols = []
    for mf in match_fiber_roots(R, F, G):
        for r in mf.roots:
            if r.membership == "both":
                sols.append(Solution(mf.base, r.root, r.mult_f, r.mult_g))
    return sols
