"""Certified isolation and refinement of roots of integer polynomials.

Real roots come from a Descartes bisection on each square-free factor, all
in exact integer arithmetic.  Complex roots are approximated numerically
(Aberth iteration) and then certified: a disk is accepted only when a
Pellet test on ball Taylor coefficients proves the number of roots it
contains.  Multiplicities come from the square-free decomposition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from cmath import rect
from math import exp, gcd as igcd, pi
from typing import Iterable, Sequence

import mpmath

from .exactnum import (
    CBall,
    Disk,
    Interval,
    RefinementBudgetExceeded,
    floor_dyadic,
    sqrt_lower,
)
from .upoly import (
    IntPoly,
    cauchy_bound,
    exact_div,
    gcd,
    square_free_decomposition,
    taylor_shift_one,
)

MAX_PREC = 1 << 15


# ------------------------------------------------------------ ball helpers

def balls_of(coeffs: Sequence[int], prec: int = 0) -> list[CBall]:
    return [CBall(a, 0, 0, 0) for a in coeffs]


def taylor_shift_balls(coeffs: Sequence[CBall], c: CBall, prec: int) -> list[CBall]:
    """Ball coefficients of g(c + X) from those of g (low to high)."""
    a = list(coeffs)
    n = len(a) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] = (a[j] + a[j + 1].mul(c, prec)).round(prec)
    return a


def pellet_holds(shifted: Sequence[CBall], rho: Fraction, k: int) -> bool:
    """|g_k| rho**k > sum_{i != k} |g_i| rho**i, decided rigorously."""
    lhs = shifted[k].abs_lower() * rho ** k
    if lhs <= 0:
        return False
    rhs = Fraction(0)
    p = Fraction(1)
    for i, b in enumerate(shifted):
        if i != k:
            rhs += b.abs_upper() * p
            if rhs >= lhs:
                return False
        p *= rho
    return lhs > rhs


def disk_count_is(coeffs: Sequence[CBall], center: tuple[Fraction, Fraction],
                  rho: Fraction, k: int, prec: int) -> bool:
    """True if the disk D_rho(center) certainly holds exactly k roots."""
    c = CBall.from_disk(center[0], center[1], 0, prec)
    return pellet_holds(taylor_shift_balls(coeffs, c, prec), rho, k)


# ---------------------------------------------------------- approximation

def _init_guesses(logs: Sequence[float | None]) -> list[complex]:
    """Starting points on circles read off the Newton polygon.

    ``logs[i]`` is log|a_i| or None for a zero coefficient.  Working with
    logarithms keeps widely spread magnitudes representable.
    """
    n = len(logs) - 1
    pts = [(i, v) for i, v in enumerate(logs) if v is not None]
    hull: list[tuple[int, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    out: list[complex] = []
    x0 = hull[0][0]
    if x0:
        # X**x0 divides the polynomial: start those roots near zero
        r0 = _exp((hull[0][1] - hull[1][1]) / (hull[1][0] - x0)) * 1e-3 if len(hull) > 1 else 1e-3
        out += [rect(r0, 2 * pi * j / x0 + 0.1) for j in range(x0)]
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        k = x2 - x1
        r = _exp((y1 - y2) / k)
        for j in range(k):
            out.append(rect(r, 2 * pi * j / k + 2 * pi * x1 / n + 0.4))
    return out


def _exp(v: float) -> float:
    return exp(max(-700.0, min(700.0, v)))


def _log_abs(x) -> float | None:
    if x == 0:
        return None
    return float(mpmath.log(abs(mpmath.mpc(x))))


def aberth(coeffs: Sequence, prec: int, init: Sequence | None = None,
           maxiter: int = 400) -> list:
    """Approximate all roots of sum coeffs[i] X**i at ``prec`` bits.

    ``coeffs`` are mpmath-compatible numbers, low to high, with a nonzero
    leading entry.  Returns a list of ``mpmath.mpc``.
    """
    n = len(coeffs) - 1
    if n <= 0:
        return []
    with mpmath.workprec(prec + 20):
        a = [mpmath.mpc(c) for c in coeffs]
        if n == 1:
            return [-a[0] / a[1]]
        if init is None:
            init = _init_guesses([_log_abs(x) for x in a])
        z = [mpmath.mpc(w) for w in init]
        da = [i * a[i] for i in range(1, n + 1)]
        eps = mpmath.mpf(2) ** (-prec)
        best = None
        stall = 0
        for _ in range(maxiter):
            moved = False
            worst = mpmath.mpf(0)
            for i in range(n):
                zi = z[i]
                p = a[n]
                for c in reversed(a[:n]):
                    p = p * zi + c
                if p == 0:
                    continue
                dp = da[n - 1]
                for c in reversed(da[: n - 1]):
                    dp = dp * zi + c
                ratio = p / dp if dp != 0 else mpmath.mpc(eps)
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != i:
                        d = zi - z[j]
                        if d != 0:
                            s += 1 / d
                denom = 1 - ratio * s
                w = ratio / denom if denom != 0 else ratio
                z[i] = zi - w
                aw = abs(w)
                worst = max(worst, aw / max(1, abs(z[i])))
                if aw > eps * max(1, abs(z[i])):
                    moved = True
            if not moved:
                break
            # near multiple roots the corrections stall at the noise level
            if best is None or worst < best / 2:
                best = worst
                stall = 0
            else:
                stall += 1
                if stall > 12:
                    break
        return z


def newton_polish(coeffs: Sequence, z, prec: int, steps: int = 60):
    """Newton iteration from z for a simple root."""
    with mpmath.workprec(prec + 20):
        a = [mpmath.mpc(c) for c in coeffs]
        n = len(a) - 1
        z = mpmath.mpc(z)
        eps = mpmath.mpf(2) ** (-prec)
        for _ in range(steps):
            p = a[n]
            dp = mpmath.mpc(0)
            for c in reversed(a[:n]):
                dp = dp * z + p
                p = p * z + c
            if dp == 0:
                break
            w = p / dp
            z -= w
            if abs(w) <= eps * max(1, abs(z)):
                break
        return z


def to_dyadic_pair(z, bits: int) -> tuple[Fraction, Fraction]:
    """Round an mpmath complex to a Gaussian dyadic with ``bits`` bits after the point."""
    if isinstance(z, (int, Fraction)):
        re, im = Fraction(z), Fraction(0)
    else:
        re, im = mp_to_fraction(z)
    return floor_dyadic(re, bits), floor_dyadic(im, bits)


def _frac_of_mpf(x) -> Fraction:
    if not isinstance(x, mpmath.mpf):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


def mp_to_fraction(z) -> tuple[Fraction, Fraction]:
    # no re-wrapping: that would round to the ambient (default) precision
    if isinstance(z, mpmath.mpc):
        return _frac_of_mpf(z.real), _frac_of_mpf(z.imag)
    if isinstance(z, mpmath.mpf):
        return _frac_of_mpf(z), Fraction(0)
    z = complex(z)
    return Fraction(z.real), Fraction(z.imag)


def cluster(points: Sequence[complex], m: int) -> list[list[int]]:
    """Single-linkage clustering of ``points`` into exactly ``m`` groups.

    Points may be mpmath numbers; distances are then taken in multiprecision.
    """
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pairs = sorted(
        ((abs(points[i] - points[j]), i, j) for i in range(n) for j in range(i + 1, n)),
        key=lambda t: t[0],
    )
    groups = n
    for _, i, j in pairs:
        if groups <= m:
            break
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            groups -= 1
    out: dict[int, list[int]] = {}
    for i in range(n):
        out.setdefault(find(i), []).append(i)
    return list(out.values())


# ------------------------------------------------------- algebraic numbers

class AlgebraicNumber:
    """A root of ``defining`` (square-free) pinned by an isolating region.

    For real roots the region is an ``Interval``: either a point holding a
    rational root, or an open interval whose endpoints are not roots and at
    which ``defining`` takes opposite signs.  Complex roots carry a
    ``Disk``.  ``refine`` shrinks the region in place, keeping it nested.
    """

    __slots__ = ("defining", "multiplicity", "region", "is_real", "_sign_lo")

    def __init__(self, defining: IntPoly, region: Interval | Disk,
                 multiplicity: int = 1, is_real: bool | None = None):
        self.defining = defining
        self.multiplicity = multiplicity
        self.region = region
        self.is_real = isinstance(region, Interval) if is_real is None else is_real
        self._sign_lo = None
        if isinstance(region, Interval) and region.lo == region.hi:
            self.defining = IntPoly.linear_for(region.lo)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.defining}, {self.region}, mult={self.multiplicity})"

    # views
    @property
    def exact_value(self) -> Fraction | None:
        """The value when it is rational, else None."""
        if self.is_real and isinstance(self.region, Interval) and self.region.lo == self.region.hi:
            return self.region.lo
        if self.defining.degree == 1:
            return Fraction(-self.defining.c[0], self.defining.c[1])
        return None

    def width(self) -> Fraction:
        if isinstance(self.region, Interval):
            return self.region.width
        return 2 * self.region.radius

    def center(self) -> tuple[Fraction, Fraction]:
        if isinstance(self.region, Interval):
            return self.region.mid, Fraction(0)
        return self.region.re, self.region.im

    def as_disk(self) -> Disk:
        if isinstance(self.region, Interval):
            return Disk(self.region.mid, Fraction(0), self.region.width / 2)
        return self.region

    def approx(self) -> complex:
        re, im = self.center()
        return complex(float(re), float(im))

    def ball(self, prec: int) -> CBall:
        """A ball around the root of radius below 2**-prec."""
        self.refine(prec + 1)
        r = self.region
        if isinstance(r, Interval):
            return CBall.from_interval(r.lo, r.hi, prec)
        return CBall.from_disk(r.re, r.im, r.radius, prec)

    def enclose(self, p: int) -> tuple[Fraction, Fraction]:
        """Rational bounds on a real root, width below 2**-p."""
        self.refine(p)
        return self.region.lo, self.region.hi

    # refinement
    def refine(self, L: int) -> "AlgebraicNumber":
        """Shrink the region below width (diameter) 2**-L."""
        target = Fraction(1, 1 << L) if L >= 0 else Fraction(1 << -L)
        if isinstance(self.region, Interval):
            self._refine_interval(target)
        else:
            self._refine_disk(target)
        return self

    def _refine_interval(self, target: Fraction) -> None:
        r = self.region
        if r.lo == r.hi or r.width < target:
            return
        g = self.defining
        lo, hi = r.lo, r.hi
        slo = self._sign_lo or g.sign_at(lo)
        self._sign_lo = slo
        steps = 0
        while hi - lo >= target:
            if steps >= 24 and (steps % 12) == 0:
                got = self._newton_try(lo, hi, slo, target)
                if got is not None:
                    lo, hi = got
                    if lo == hi:
                        break
                    continue
            mid = (lo + hi) / 2
            s = g.sign_at(mid)
            if s == 0:
                lo = hi = mid
                break
            if s == slo:
                lo = mid
            else:
                hi = mid
            steps += 1
        self.region = Interval(lo, hi)
        if lo == hi:
            self.defining = IntPoly.linear_for(lo)

    def _newton_try(self, lo, hi, slo, target):
        g = self.defining
        bits = max(64, 2 * (target.denominator.bit_length()) + 32)
        with mpmath.workprec(bits):
            x0 = mpmath.mpf(lo.numerator) / lo.denominator
            x1 = mpmath.mpf(hi.numerator) / hi.denominator
            z = newton_polish(list(g.c), (x0 + x1) / 2, bits)
            zr = _frac_of_mpf(z.real)
        k = target.denominator.bit_length() + 2
        eps = Fraction(1, 1 << k)
        c = floor_dyadic(zr, k)
        a, b = c - eps, c + eps
        if not (lo < a and b < hi):
            return None
        sa, sb = g.sign_at(a), g.sign_at(b)
        if sa == 0:
            return a, a
        if sb == 0:
            return b, b
        if sa == slo and sb != slo:
            return a, b
        return None

    def _refine_disk(self, target: Fraction) -> None:
        d = self.region
        if 2 * d.radius < target:
            return
        g = self.defining
        coeffs = balls_of(g.c)
        k = 3 - _log2_floor(target)
        mag = max(abs(d.re) + abs(d.im) + d.radius, Fraction(1))
        bits = max(64, k + mag.numerator.bit_length() - mag.denominator.bit_length() + 40)
        for _ in range(8):
            with mpmath.workprec(bits):
                z0 = mpmath.mpc(_mpf_exact(d.re), _mpf_exact(d.im))
            z = newton_polish(list(g.c), z0, bits)
            prec = bits + 2 * g.bits() + 32
            # smaller disks are fine too: sweep down a few sizes
            for kk in (k, k + 4, k + 12):
                rho = Fraction(1, 1 << kk) if kk >= 0 else Fraction(1 << -kk)
                re, im = mp_to_fraction(z)
                re, im = floor_dyadic(re, kk + 6), floor_dyadic(im, kk + 6)
                new = Disk(re, im, rho)
                if d.contains_disk(new):
                    if disk_count_is(coeffs, (re, im), rho, 1, prec):
                        self.region = new
                        return
                elif d.overlaps(new):
                    # the root sits near the rim: the widened old disk must
                    # still hold a single root, which is then the one in new
                    if (disk_count_is(coeffs, (re, im), rho, 1, prec)
                            and disk_count_is(coeffs, (d.re, d.im), d.radius + 2 * rho, 1, prec)):
                        self.region = new
                        return
            bits *= 2
        raise RefinementBudgetExceeded("complex root refinement failed")


def _mpf_exact(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


# ------------------------------------------------------- real isolation

def _variations(c: Iterable[int]) -> int:
    v = 0
    prev = 0
    for a in c:
        if a:
            if prev and (a > 0) != (prev > 0):
                v += 1
            prev = a
    return v


def _descartes_unit(q: list[int]) -> int:
    return _variations(taylor_shift_one(list(reversed(q))))


def _primitive_list(q: list[int]) -> list[int]:
    g = reduce(igcd, q, 0)
    return [a // g for a in q] if g > 1 else q


def _positive_roots(g: IntPoly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (lo, hi) for the positive roots of square-free g.

    Requires g(0) != 0.  A pair with lo == hi is an exact rational root.
    """
    C = cauchy_bound(g)
    b = 0
    while Fraction(1 << b) <= C:
        b += 1
    scale = Fraction(1 << b)
    q = [a << (b * i) for i, a in enumerate(g.c)]
    out = []
    stack = [(_primitive_list(q), 0, 0)]
    while stack:
        q, c, k = stack.pop()
        v = _descartes_unit(q)
        if v == 0:
            continue
        lo = scale * Fraction(c, 1 << k)
        hi = scale * Fraction(c + 1, 1 << k)
        if v == 1 and g.sign_at(lo) != 0 and g.sign_at(hi) != 0:
            out.append((lo, hi))
            continue
        n = len(q) - 1
        ql = [a << (n - i) for i, a in enumerate(q)]
        qr = taylor_shift_one(ql)
        if qr[0] == 0:
            out.append((scale * Fraction(2 * c + 1, 1 << (k + 1)),) * 2)
            qr = qr[1:]
            ql = list(exact_div(IntPoly(ql), IntPoly((-1, 1))).c)
        if len(ql) > 1:
            stack.append((_primitive_list(ql), 2 * c, k + 1))
        if len(qr) > 1:
            stack.append((_primitive_list(qr), 2 * c + 1, k + 1))
    return out


def _real_roots_squarefree(g: IntPoly) -> list[tuple[IntPoly, Fraction, Fraction]]:
    """(defining polynomial, lo, hi) per real root; endpoints are never roots."""
    if g.degree <= 0:
        return []
    out = []
    if g.c[0] == 0:
        out.append((g, Fraction(0), Fraction(0)))
        g = IntPoly(g.c[1:])
        if g.degree <= 0:
            return out
    out += [(g, lo, hi) for lo, hi in _positive_roots(g)]
    out += [(g, -hi, -lo) for lo, hi in _positive_roots(g.mirror())]
    out.sort(key=lambda t: (t[1], t[2]))
    return out


def _make_real(g: IntPoly, lo: Fraction, hi: Fraction, mult: int) -> AlgebraicNumber:
    if g.degree == 1:
        lo = hi = Fraction(-g.c[0], g.c[1])
    if lo == hi:
        return AlgebraicNumber(IntPoly.linear_for(lo), Interval(lo, hi), mult)
    return AlgebraicNumber(g, Interval(lo, hi), mult)


def _separate_real(roots: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Refine until the intervals are pairwise disjoint, then sort."""
    roots.sort(key=lambda a: a.region.lo)
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda a: a.region.lo)
        for a, b in zip(roots, roots[1:]):
            if a.region.hi >= b.region.lo:
                wa, wb = a.width(), b.width()
                if wa >= wb and wa > 0:
                    a.refine(-_log2_floor(wa) + 1)
                elif wb > 0:
                    b.refine(-_log2_floor(wb) + 1)
                else:
                    raise ArithmeticError("two exact roots coincide")
                changed = True
    roots.sort(key=lambda a: a.region.lo)
    return roots


def _log2_floor(q: Fraction) -> int:
    """floor(log2 q) for q > 0."""
    n, d = q.numerator, q.denominator
    e = n.bit_length() - d.bit_length()
    if (n << max(0, -e)) < (d << max(0, e)):
        e -= 1
    return e


def isolate_real_roots(f: IntPoly) -> list[AlgebraicNumber]:
    """All distinct real roots of f, sorted, with multiplicities."""
    if f.is_zero():
        raise ValueError("real roots of the zero polynomial")
    roots = []
    for g, mult in square_free_decomposition(f):
        for h, lo, hi in _real_roots_squarefree(g):
            roots.append(_make_real(h, lo, hi, mult))
    return _separate_real(roots)


def count_real_roots(f: IntPoly) -> int:
    """Number of distinct real roots."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return sum(len(_real_roots_squarefree(g)) for g, _ in square_free_decomposition(f))


# ---------------------------------------------------- complex isolation

def _certify_squarefree(g: IntPoly, reals: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Disks for all roots of square-free g.  ``reals`` are its real roots."""
    n = g.degree
    nreal = len(reals)
    npairs = (n - nreal) // 2
    prec = 64
    coeffs = balls_of(g.c)
    guesses = None
    while prec <= MAX_PREC:
        approx = aberth(list(g.c), prec, init=guesses)
        guesses = approx
        # the npairs approximations with the largest positive imaginary part
        upper = sorted(approx, key=lambda z: -float(z.imag))[:npairs]
        ok = all(float(z.imag) > 0 for z in upper)
        disks: list[AlgebraicNumber] = []
        if ok:
            for z in upper:
                re, im = mp_to_fraction(z)
                re, im = floor_dyadic(re, prec), floor_dyadic(im, prec)
                if im <= 0:
                    ok = False
                    break
                # radius: geometric middle between the Newton error and the
                # distance to the nearest other approximation
                others = [w for w in approx if w is not z]
                # differences in multiprecision: floats lose them at large modulus
                with mpmath.workprec(prec + 20):
                    dist = min((float(abs(w - z)) for w in others), default=1.0)
                dist = min(dist, float(im))
                got = None
                for frac in (Fraction(1, 4), Fraction(1, 16), Fraction(1, 256), Fraction(1, 1 << 20)):
                    rho = floor_dyadic(Fraction(dist) * frac, prec + 8)
                    if rho <= 0 or rho >= im:
                        continue
                    if disk_count_is(coeffs, (re, im), rho, 1, prec + 2 * g.bits() + 16):
                        got = rho
                        break
                if got is None:
                    ok = False
                    break
                disks.append(AlgebraicNumber(g, Disk(re, im, got), 1, is_real=False))
        if ok:
            # real roots: disks around the isolating intervals
            real_disks = []
            for a in reals:
                d = _real_disk(g, a, coeffs, prec)
                if d is None:
                    ok = False
                    break
                real_disks.append(d)
        if ok:
            conj = [AlgebraicNumber(g, Disk(d.region.re, -d.region.im, d.region.radius), 1,
                                    is_real=False) for d in disks]
            allr = disks + conj
            cdisks = [a.as_disk() for a in allr]
            for _ in range(40):
                if _pairwise_disjoint(cdisks + real_disks):
                    return allr
                if not _pairwise_disjoint(cdisks):
                    break
                # shrink the real disks that touch anything
                bad = [k for k, d in enumerate(real_disks)
                       if any(d.overlaps(e) for e in cdisks)
                       or any(d.overlaps(e) for k2, e in enumerate(real_disks) if k2 != k)]
                for k in bad:
                    a = reals[k]
                    a.refine(-_log2_floor(a.region.width) + 2)
                    d = _real_disk(g, a, coeffs, prec)
                    if d is None:
                        break
                    real_disks[k] = d
        prec *= 2
    raise RefinementBudgetExceeded("complex isolation did not certify")


def _real_disk(g: IntPoly, a: AlgebraicNumber, coeffs, prec) -> Disk | None:
    for _ in range(60):
        r = a.region
        if r.lo == r.hi:
            return Disk(r.lo, Fraction(0), Fraction(0))
        d = Disk(r.mid, Fraction(0), r.width)
        if disk_count_is(coeffs, (d.re, d.im), d.radius, 1, prec + 2 * g.bits() + 16):
            return d
        a.refine(-_log2_floor(r.width) + 1)
    return None


def _pairwise_disjoint(ds: list[Disk]) -> bool:
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            if ds[i].overlaps(ds[j]):
                return False
    return True


def isolate_complex_roots(f: IntPoly) -> list[AlgebraicNumber]:
    """All distinct complex roots of f with multiplicities.

    Real roots keep an ``Interval`` region (their disk is the interval's
    circumscribed disk); non-real roots carry disks that miss the real axis.
    """
    if f.is_zero():
        raise ValueError("complex roots of the zero polynomial")
    out: list[AlgebraicNumber] = []
    for g, mult in square_free_decomposition(f):
        reals = [_make_real(h, lo, hi, mult) for h, lo, hi in _real_roots_squarefree(g)]
        if g.degree > len(reals):
            nonreal = _certify_squarefree(g, reals)
            for a in nonreal:
                a.multiplicity = mult
            out += nonreal
        out += reals
    _separate_all(out)
    return out


def _separate_all(roots: list[AlgebraicNumber]) -> None:
    changed = True
    while changed:
        changed = False
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                a, b = roots[i], roots[j]
                if a.as_disk().overlaps(b.as_disk()):
                    big = a if a.width() >= b.width() else b
                    if big.width() == 0:
                        raise ArithmeticError("coinciding exact roots")
                    big.refine(-_log2_floor(big.width()) + 1)
                    changed = True


def refine(a: AlgebraicNumber, L: int) -> AlgebraicNumber:
    return a.refine(L)


# ------------------------------------------------------- well isolation

def region_distance(a: AlgebraicNumber, b: AlgebraicNumber) -> Fraction:
    """Lower bound on the distance between two regions (0 if they touch)."""
    if a.is_real and b.is_real and isinstance(a.region, Interval) and isinstance(b.region, Interval):
        ra, rb = a.region, b.region
        return max(rb.lo - ra.hi, ra.lo - rb.hi, Fraction(0))
    da, db = a.as_disk(), b.as_disk()
    return max(da.center_distance_lower(db) - da.radius - db.radius, Fraction(0))


def make_well_isolating(roots: list[AlgebraicNumber], n: int | None = None) -> list[AlgebraicNumber]:
    """Refine until each region is small against its distance to the others.

    Intervals end with width < dist/(33 n); disks with radius < dist/(65 n).
    """
    if n is None:
        n = max((a.defining.degree for a in roots), default=1)
    n = max(n, 1)
    if len(roots) <= 1:
        return roots
    while True:
        done = True
        for i, a in enumerate(roots):
            dist = min(region_distance(a, b) for j, b in enumerate(roots) if j != i)
            w = a.width()
            if w == 0:
                continue
            if isinstance(a.region, Interval):
                ok = dist > 0 and w * 33 * n < dist
            else:
                ok = dist > 0 and a.region.radius * 65 * n < dist
            if not ok:
                a.refine(-_log2_floor(w) + 2)
                done = False
        if done:
            return roots


def separation(roots: list[AlgebraicNumber], i: int) -> Fraction | None:
    """Estimate of sep at root i from region centers; None means +infinity."""
    if len(roots) <= 1:
        return None
    ci = roots[i].center()
    best = None
    for j, b in enumerate(roots):
        if j == i:
            continue
        cj = b.center()
        d = sqrt_lower((ci[0] - cj[0]) ** 2 + (ci[1] - cj[1]) ** 2)
        best = d if best is None or d < best else best
    return best


# ---------------------------------------------- identification and signs

def vanishes_at(g: IntPoly, z: AlgebraicNumber) -> bool:
    """Exact test g(z) == 0."""
    if g.is_zero():
        return True
    val = z.exact_value
    if val is not None:
        return g.sign_at(val) == 0
    h = gcd(z.defining, g)
    if h.degree <= 0:
        return False
    if z.is_real and isinstance(z.region, Interval):
        r = z.region
        return h.sign_at(r.lo) * h.sign_at(r.hi) < 0
    # complex: the only root of h that may lie in z's disk is z itself
    for w in isolate_complex_roots(h):
        while True:
            dw, dz = w.as_disk(), z.as_disk()
            if not dw.overlaps(dz):
                break
            if dz.contains_disk(dw):
                return True
            w.refine(-_log2_floor(max(w.width(), Fraction(1, 1 << 4000))) + 1)
            if z.width() > w.width() * 4:
                z.refine(-_log2_floor(z.width()) + 1)
    return False


def sign_at(g: IntPoly, z: AlgebraicNumber) -> int:
    """Sign of g at a real algebraic number."""
    if not z.is_real:
        raise ValueError("sign at a non-real number")
    val = z.exact_value
    if val is not None:
        return g.sign_at(val)
    if vanishes_at(g, z):
        return 0
    prec = 64
    while True:
        b = int_horner_interval(g, z, prec)
        if b:
            return b
        prec *= 2
        if prec > MAX_PREC * 8:
            raise RefinementBudgetExceeded("sign determination")


def int_horner_interval(g: IntPoly, z: AlgebraicNumber, prec: int) -> int:
    from .exactnum import int_horner_ball
    x = z.ball(prec)
    return int_horner_ball(g.c, x, prec + g.bits() + 8 * max(g.degree, 1)).real_sign()


def identify_and_sign(f: IntPoly, gs: Sequence[IntPoly]) -> list[tuple[AlgebraicNumber, list[int]]]:
    """For each real root z of f, the signs of every g in ``gs`` at z."""
    out = []
    for z in isolate_real_roots(f):
        out.append((z, [sign_at(g, z) for g in gs]))
    return out
