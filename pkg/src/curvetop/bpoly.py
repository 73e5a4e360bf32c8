"""Bivariate integer polynomials in X and Y.

An ``IntPoly2`` is stored as its Y-view: a tuple of ``IntPoly`` in X, where
entry ``l`` is the coefficient f_l(X) of Y**l.  Resultants and subresultant
coefficients are computed by specializing X at integers, solving the
univariate problem there and interpolating.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb
from typing import Callable, Iterable, Sequence

from .exactnum import CBall
from .upoly import (
    IntPoly,
    exact_div,
    gcd,
    principal_subresultants_q,
)


class IntPoly2:
    """Immutable polynomial sum_l f_l(X) Y**l with integer coefficients."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[IntPoly] = ()):
        r = [p if isinstance(p, IntPoly) else IntPoly(p) for p in rows]
        while r and r[-1].is_zero():
            r.pop()
        self.rows: tuple[IntPoly, ...] = tuple(r)
        self._hash = None

    # construction
    @classmethod
    def from_dict(cls, d: dict[tuple[int, int], int]) -> "IntPoly2":
        """Build from ``{(i, j): a}`` meaning a * X**i * Y**j."""
        if not d:
            return cls()
        ny = max(j for (_, j) in d)
        nx = max(i for (i, _) in d)
        grid = [[0] * (nx + 1) for _ in range(ny + 1)]
        for (i, j), a in d.items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            grid[j][i] += a
        return cls(IntPoly(r) for r in grid)

    @classmethod
    def from_x(cls, p: IntPoly) -> "IntPoly2":
        return cls((p,))

    @classmethod
    def from_y(cls, p: IntPoly) -> "IntPoly2":
        return cls(IntPoly((a,)) for a in p.c)

    @classmethod
    def X(cls) -> "IntPoly2":
        return cls((IntPoly((0, 1)),))

    @classmethod
    def Y(cls) -> "IntPoly2":
        return cls((IntPoly(), IntPoly((1,))))

    def to_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): a for j, r in enumerate(self.rows) for i, a in enumerate(r.c) if a}

    # degrees and sizes
    def is_zero(self) -> bool:
        return not self.rows

    @property
    def deg_y(self) -> int:
        return len(self.rows) - 1

    @property
    def deg_x(self) -> int:
        return max((r.degree for r in self.rows), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j) in self.to_dict()), default=-1)

    def bits(self) -> int:
        return max((r.bits() for r in self.rows), default=0)

    def lc_y(self) -> IntPoly:
        """Leading coefficient in Y, a polynomial in X."""
        return self.rows[-1] if self.rows else IntPoly()

    def lc_x(self) -> IntPoly:
        """Leading coefficient in X, a polynomial in Y."""
        return self.transpose().lc_y()

    def coeff_y(self, l: int) -> IntPoly:
        return self.rows[l] if 0 <= l < len(self.rows) else IntPoly()

    def truncate_y(self, l: int) -> "IntPoly2":
        """F_l = sum_{i <= l} f_i(X) Y**i."""
        return IntPoly2(self.rows[: l + 1])

    def transpose(self) -> "IntPoly2":
        return IntPoly2.from_dict({(j, i): a for (i, j), a in self.to_dict().items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly2) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        return f"IntPoly2({self.to_dict()})"

    def __str__(self) -> str:
        d = self.to_dict()
        if not d:
            return "0"
        terms = sorted(d.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))
        out = ""
        for k, ((i, j), a) in enumerate(terms):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("X" if i == 1 else f"X^{i}"),
                    "" if j == 0 else ("Y" if j == 1 else f"Y^{j}"),
                ) if s
            )
            mag = abs(a)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if k == 0:
                out = ("-" if a < 0 else "") + body
            else:
                out += (" - " if a < 0 else " + ") + body
        return out

    # arithmetic
    @staticmethod
    def _coerce(other) -> "IntPoly2":
        if isinstance(other, IntPoly2):
            return other
        if isinstance(other, int):
            return IntPoly2((IntPoly((other,)),))
        if isinstance(other, IntPoly):
            return IntPoly2((other,))
        return NotImplemented

    def __add__(self, other: "IntPoly2 | IntPoly | int") -> "IntPoly2":
        other = IntPoly2._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.rows), len(other.rows))
        return IntPoly2(self.coeff_y(l) + other.coeff_y(l) for l in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly2":
        return IntPoly2(-r for r in self.rows)

    def __sub__(self, other: "IntPoly2 | IntPoly | int") -> "IntPoly2":
        return self + (-IntPoly2._coerce(other))

    def __rsub__(self, other: "IntPoly | int") -> "IntPoly2":
        return IntPoly2._coerce(other) - self

    def __mul__(self, other: "IntPoly2 | IntPoly | int") -> "IntPoly2":
        if isinstance(other, int):
            return IntPoly2(r * other for r in self.rows)
        if isinstance(other, IntPoly):
            return IntPoly2(r * other for r in self.rows)
        if self.is_zero() or other.is_zero():
            return IntPoly2()
        out = [IntPoly() for _ in range(len(self.rows) + len(other.rows) - 1)]
        for i, a in enumerate(self.rows):
            if a.is_zero():
                continue
            for j, b in enumerate(other.rows):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return IntPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly2":
        out = IntPoly2((IntPoly((1,)),))
        for _ in range(k):
            out = out * self
        return out

    def dx(self) -> "IntPoly2":
        return IntPoly2(r.derivative() for r in self.rows)

    def dy(self) -> "IntPoly2":
        return IntPoly2(r * l for l, r in enumerate(self.rows) if l)

    def taylor_y(self, k: int) -> "IntPoly2":
        """F^[k] = (d/dY)**k F / k!."""
        return IntPoly2(r * comb(l, k) for l, r in enumerate(self.rows) if l >= k)

    def div_x_poly(self, c: IntPoly) -> "IntPoly2":
        """Exact division by a polynomial in X alone."""
        return IntPoly2(exact_div(r, c) if not r.is_zero() else r for r in self.rows)

    def div_y_poly(self, d: IntPoly) -> "IntPoly2":
        """Exact division by a polynomial in Y alone."""
        return self.transpose().div_x_poly(d).transpose()

    def content_x(self) -> IntPoly:
        """Primitive gcd c(X) of the Y-coefficients (positive lc)."""
        nz = [r for r in self.rows if not r.is_zero()]
        if not nz:
            raise ValueError("content of the zero polynomial")
        return reduce(gcd, nz[1:], nz[0].primitive())

    def content_y(self) -> IntPoly:
        """Primitive gcd d(Y) of the X-coefficients (positive lc)."""
        return self.transpose().content_x()

    def primitive(self) -> "IntPoly2":
        g = reduce(lambda a, b: __import__("math").gcd(a, b),
                   (r.content() for r in self.rows), 0)
        if g == 0:
            return self
        lead = self.lc_y().lc()
        if lead < 0:
            g = -g
        return IntPoly2(IntPoly(a // g for a in r.c) for r in self.rows)

    def shear(self, s: int) -> "IntPoly2":
        """F(X + s Y, Y)."""
        out = IntPoly2()
        lin = IntPoly2((IntPoly((0, 1)), IntPoly((s,))))
        pw = IntPoly2((IntPoly((1,)),))
        # collect the X-view: F = sum_i g_i(Y) X**i
        tv = self.transpose()
        for i, g in enumerate(tv.rows):
            if not g.is_zero():
                out = out + IntPoly2.from_y(g) * pw
            pw = pw * lin
        return out

    # evaluation
    def eval_x_int(self, x: int) -> IntPoly:
        return IntPoly(r(x) for r in self.rows)

    def eval_x(self, r: Fraction | int) -> IntPoly:
        """den**deg_x * F(r, Y) as an integer polynomial in Y."""
        r = Fraction(r)
        p, q = r.numerator, r.denominator
        n = self.deg_x
        out = []
        for row in self.rows:
            acc = 0
            qp = 1
            for a in reversed(row.c):
                acc = acc * p + a * qp
                qp *= q
            # row has degree row.degree; scale up to the common degree n
            out.append(acc * q ** (n - max(row.degree, 0)) if row.c else 0)
        return IntPoly(out)

    def eval_y(self, r: Fraction | int) -> IntPoly:
        """den**deg_y * F(X, r) as an integer polynomial in X."""
        return self.transpose().eval_x(r)

    def eval_exact(self, r1: Fraction | int, r2: Fraction | int) -> Fraction:
        r1, r2 = Fraction(r1), Fraction(r2)
        acc = Fraction(0)
        for row in reversed(self.rows):
            acc = acc * r2 + row.eval_rational(r1)
        return acc

    def eval_ball(self, x: CBall, y: CBall, prec: int) -> CBall:
        """Ball enclosure of F(x, y) at working precision ``prec``."""
        acc = CBall.exact(0, prec)
        for row in reversed(self.rows):
            acc = acc.mul(y, prec) + _int_horner(row.c, x, prec)
            acc = acc.round(prec)
        return acc

    def eval_enclose(
        self,
        enclose_x: Callable[[int], CBall],
        enclose_y: Callable[[int], CBall],
        L: int,
        max_prec: int = 1 << 16,
    ) -> complex | tuple[Fraction, Fraction]:
        """Gaussian dyadic (re, im) within 2**-L of F(x, y).

        ``enclose_x(p)`` and ``enclose_y(p)`` return balls around the inputs
        whose radius shrinks as ``p`` grows.
        """
        prec = max(L + 16, 32)
        while prec <= max_prec:
            b = self.eval_ball(enclose_x(prec), enclose_y(prec), prec)
            if b.radius() * 4 < Fraction(1, 2 ** L):
                return b.center()
            prec *= 2
        from .exactnum import RefinementBudgetExceeded
        raise RefinementBudgetExceeded("eval_enclose did not converge")


def _int_horner(c: Sequence[int], x: CBall, prec: int) -> CBall:
    acc = CBall.exact(0, prec)
    for a in reversed(c):
        acc = acc.mul(x, prec) + CBall.exact(a, prec)
    return acc


# ------------------------------------------------------------- elimination

def _newton_interpolate(xs: list[int], ys: list[Fraction]) -> IntPoly:
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into the monomial basis
    poly = [Fraction(0)] * n
    poly[0] = coef[-1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (X - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(deg + 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
        deg += 1
    out = []
    for v in poly:
        if v.denominator != 1:
            raise ArithmeticError("interpolated polynomial is not integral")
        out.append(int(v))
    return IntPoly(out)


def _eval_points():
    k = 0
    yield 0
    while True:
        k += 1
        yield k
        yield -k


def subresultant_sequence_y(F: IntPoly2, G: IntPoly2) -> list[IntPoly]:
    """sr_0(X) .. sr_min(X): principal subresultant coefficients w.r.t. Y.

    Computed at the formal degrees n = deg_Y F, m = deg_Y G.
    """
    if F.is_zero() or G.is_zero():
        raise ValueError("subresultants need nonzero polynomials")
    n, m = F.deg_y, G.deg_y
    k = min(n, m)
    ax, bx = max(F.deg_x, 0), max(G.deg_x, 0)
    bound = max((m - j) * ax + (n - j) * bx for j in range(k + 1))
    need = bound + 1
    lf, lg = F.lc_y(), G.lc_y()
    xs: list[int] = []
    vals: list[list[Fraction]] = []
    for x in _eval_points():
        if lf(x) == 0 or lg(x) == 0:
            continue
        f = F.eval_x_int(x)
        g = G.eval_x_int(x)
        vals.append(principal_subresultants_q(f.c, g.c))
        xs.append(x)
        if len(xs) == need:
            break
    return [_newton_interpolate(xs, [v[j] for v in vals]) for j in range(k + 1)]


def resultant_y(F: IntPoly2, G: IntPoly2) -> IntPoly:
    """Res_Y(F, G) as a polynomial in X."""
    if F.is_zero() and G.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if F.is_zero() or G.is_zero():
        return IntPoly()
    if G.deg_y == 0:
        return G.lc_y() ** F.deg_y
    if F.deg_y == 0:
        return F.lc_y() ** G.deg_y
    return subresultant_sequence_y(F, G)[0]


def resultant_x(F: IntPoly2, G: IntPoly2) -> IntPoly:
    """Res_X(F, G) as a polynomial in Y."""
    return resultant_y(F.transpose(), G.transpose())


resultant_in_x = resultant_x


def subresultant_sequence_x(F: IntPoly2, G: IntPoly2) -> list[IntPoly]:
    return subresultant_sequence_y(F.transpose(), G.transpose())


def discriminant_y(F: IntPoly2) -> IntPoly:
    """Disc_Y(F) with lc_Y(F) * Disc_Y(F) = Res_Y(F, dF/dY)."""
    if F.deg_y < 1:
        raise ValueError("discriminant needs positive degree in Y")
    if F.deg_y == 1:
        return IntPoly((1,))
    return exact_div(resultant_y(F, F.dy()), F.lc_y())


def discriminant_x(F: IntPoly2) -> IntPoly:
    return discriminant_y(F.transpose())


def subdiscriminants_y(F: IntPoly2) -> list[IntPoly]:
    """sDisc_k(X) for k = 0 .. deg_Y F - 1."""
    n = F.deg_y
    if n < 1:
        raise ValueError("subdiscriminants need positive degree in Y")
    if n == 1:
        return [IntPoly((1,))]
    sr = subresultant_sequence_y(F, F.dy())
    lc = F.lc_y()
    return [exact_div(s, lc) if not s.is_zero() else s for s in sr[:n]]
