"""Univariate integer polynomials.

``IntPoly`` stores coefficients low to high.  Besides ring arithmetic this
module provides gcd, exact division, square-free decomposition, Taylor
coefficients, Cauchy bounds, norms, subresultants, (sub)discriminants and
the generalized discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd as igcd, isqrt
from typing import Iterable, Sequence

Number = int | Fraction


class NotDivisible(ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


def _strip(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


# Kronecker substitution pays off once both factors are long enough.
_KRONECKER_MIN = 24


def _pack(c: Sequence[int], k: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc << k) + a
    return acc


def _unpack(v: int, k: int, n: int) -> list[int]:
    out = []
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    for _ in range(n):
        d = v & mask
        v >>= k
        if d >= half:
            d -= 1 << k
            v += 1
        out.append(d)
    return out


def _mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    k = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    return _unpack(_pack(a, k) * _pack(b, k), k, len(a) + len(b) - 1)


class IntPoly:
    """Immutable polynomial with integer coefficients ``a_0 .. a_n``."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self.c = _strip(int(x) for x in coeffs)
        self._hash = None

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, a: int) -> "IntPoly":
        return cls((a,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def linear_for(cls, q: Number) -> "IntPoly":
        """Primitive linear polynomial vanishing at the rational ``q``."""
        q = Fraction(q)
        return cls((-q.numerator, q.denominator))

    # basic accessors
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def tcoeff(self) -> int:
        for a in self.c:
            if a:
                return a
        return 0

    def coeff(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def bits(self) -> int:
        """Smallest tau with every |a_i| < 2**tau."""
        return max((abs(a).bit_length() for a in self.c), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly((other,))
        return isinstance(other, IntPoly) and self.c == other.c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self) -> str:
        return f"IntPoly({list(self.c)})"

    def __str__(self) -> str:
        return poly_str(self.c, "X")

    def __bool__(self) -> bool:
        return bool(self.c)

    # ring operations
    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] += y
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-a for a in self.c)

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPoly":
        return IntPoly((other,)) - self

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(a * other for a in self.c)
        return IntPoly(_mul_coeffs(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out, base = IntPoly((1,)), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(i * a for i, a in enumerate(self.c) if i)

    def content(self) -> int:
        g = reduce(igcd, self.c, 0)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.c:
            return self
        g = self.content()
        if self.c[-1] < 0:
            g = -g
        return IntPoly(a // g for a in self.c)

    def reverse(self) -> "IntPoly":
        return IntPoly(reversed(self.c))

    def scale_var(self, k: int) -> "IntPoly":
        """f(k X)."""
        return IntPoly(a * k ** i for i, a in enumerate(self.c))

    def mirror(self) -> "IntPoly":
        """f(-X)."""
        return IntPoly(-a if i & 1 else a for i, a in enumerate(self.c))

    def shift(self, s: int) -> "IntPoly":
        """f(X + s) for an integer s."""
        return IntPoly(taylor_shift(self.c, s))

    def compose_linear(self, num: int, den: int) -> "IntPoly":
        """den**n * f(X + num/den), which has integer coefficients."""
        n = self.degree
        lin = IntPoly((num, den))
        acc = IntPoly()
        dp = 1
        for a in reversed(self.c):
            acc = acc * lin + IntPoly((a * dp,))
            dp *= den
        return acc

    # evaluation
    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def eval_rational(self, r: Number) -> Fraction:
        r = Fraction(r)
        p, q = r.numerator, r.denominator
        n = self.degree
        if n < 0:
            return Fraction(0)
        acc = 0
        qp = 1
        for a in reversed(self.c):
            acc = acc * p + a * qp
            qp *= q
        return Fraction(acc, q ** n)

    def sign_at(self, r: Number) -> int:
        r = Fraction(r)
        p, q = r.numerator, r.denominator
        acc = 0
        qp = 1
        for a in reversed(self.c):
            acc = acc * p + a * qp
            qp *= q
        return (acc > 0) - (acc < 0)

    def sign_at_dyadic(self, m: int, e: int) -> int:
        """Sign of f(m / 2**e) using only shifts."""
        acc = 0
        sh = 0
        for a in reversed(self.c):
            acc = acc * m + (a << sh)
            sh += e
        return (acc > 0) - (acc < 0)

    # division
    def divmod_q(self, other: "IntPoly") -> tuple[list[Fraction], list[Fraction]]:
        return divmod_rational(list(self.c), list(other.c))

    def pseudo_rem(self, other: "IntPoly") -> "IntPoly":
        r = list(self.c)
        d = other.degree
        b = other.c[-1]
        while len(r) - 1 >= d and r:
            k = len(r) - 1 - d
            lead = r[-1]
            r = [x * b for x in r]
            for i, y in enumerate(other.c):
                r[i + k] -= lead * y
            r = list(_strip(r))
        return IntPoly(r)


def poly_str(c: Sequence[int], var: str) -> str:
    if not any(c):
        return "0"
    parts = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def taylor_shift(c: Sequence[int], s: int) -> list[int]:
    """Coefficients of f(X + s) by repeated synthetic division."""
    a = list(c)
    n = len(a)
    if s == 0:
        return a
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += s * a[j + 1]
    return a


def taylor_shift_one(c: list[int]) -> list[int]:
    n = len(c)
    a = list(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def divmod_rational(a: list, b: list) -> tuple[list[Fraction], list[Fraction]]:
    """Polynomial division over Q (coefficient lists low to high)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    lb = b[-1]
    for k in range(len(a) - 1 - db, -1, -1):
        t = a[k + db] / lb
        q[k] = t
        if t:
            for i, y in enumerate(b):
                a[k + i] -= t * y
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


# ------------------------------------------------------------- gcd family

def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f / g, raising ``NotDivisible`` if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    a = list(f.c)
    b = g.c
    db = len(b) - 1
    if len(a) - 1 < db:
        raise NotDivisible(f"{g} does not divide {f}")
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        t, rem = divmod(a[k + db], lb)
        if rem:
            raise NotDivisible(f"{g} does not divide {f}")
        q[k] = t
        if t:
            for i, y in enumerate(b):
                a[k + i] -= t * y
    if any(a[:db]):
        raise NotDivisible(f"{g} does not divide {f}")
    return IntPoly(q)


def divides(g: IntPoly, f: IntPoly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


def _interpolate_heu(h: int, x: int) -> list[int]:
    out = []
    half = x // 2
    while h:
        r = h % x
        if r > half:
            r -= x
        out.append(r)
        h = (h - r) // x
    return out


def _gcd_prs(f: IntPoly, g: IntPoly) -> IntPoly:
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b)
        a, b = b, (r.primitive() if not r.is_zero() else r)
        if b.degree == 0:
            return IntPoly((1,))
    return a.primitive()


def gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    if f.degree == 0 or g.degree == 0:
        return IntPoly((1,))
    f, g = f.primitive(), g.primitive()
    if f == g:
        return f
    # strip common powers of X first (keeps evaluation points meaningful)
    vf = next(i for i, a in enumerate(f.c) if a)
    vg = next(i for i, a in enumerate(g.c) if a)
    v = min(vf, vg)
    if vf or vg:
        fs, gs = IntPoly(f.c[vf:]), IntPoly(g.c[vg:])
        core = gcd(fs, gs) if fs.degree > 0 and gs.degree > 0 else IntPoly((1,))
        return (core * IntPoly((0,) * v + (1,))).primitive()
    # heuristic gcd by evaluation at a large integer
    fn = max(abs(a) for a in f.c)
    gn = max(abs(a) for a in g.c)
    b = min(fn, gn)
    # with x >= 2 min(|f|, |g|) + 2 a candidate dividing both is the gcd
    x = 2 * b + 2
    for _ in range(6):
        ff, gg = f(x), g(x)
        if ff and gg:
            h = igcd(ff, gg)
            cand = IntPoly(_interpolate_heu(h, x))
            if cand.degree >= 0:
                cand = cand.primitive()
                if cand.degree >= 0 and divides(cand, f) and divides(cand, g):
                    return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return _gcd_prs(f, g)


def square_free_part(f: IntPoly) -> IntPoly:
    """Primitive square-free part with positive leading coefficient."""
    if f.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if f.degree <= 0:
        return IntPoly((1,))
    g = gcd(f, f.derivative())
    return exact_div(f.primitive(), g)


def square_free_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: list of (g_i, i) with f = unit * prod g_i**i."""
    if f.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    out: list[tuple[IntPoly, int]] = []
    if f.degree <= 0:
        return out
    f = f.primitive()
    fp = f.derivative()
    a = gcd(f, fp)
    b = exact_div(f, a)
    c = exact_div(fp, a) if a.degree >= 0 else fp
    # c and fp differ by the content of a, so rebuild with rational care
    d = _sub_scaled(c, b.derivative())
    i = 1
    while b.degree > 0:
        y = gcd(b, d)
        if y.degree > 0:
            out.append((y, i))
        b = exact_div(b, y)
        c = exact_div(d, y) if not d.is_zero() else d
        d = _sub_scaled(c, b.derivative())
        i += 1
    return out


def _sub_scaled(c: IntPoly, bp: IntPoly) -> IntPoly:
    return c - bp


def taylor_coefficient(f: IntPoly, i: int) -> IntPoly:
    """f^[i] = f^(i) / i!, which has integer coefficients."""
    if i < 0:
        raise ValueError("negative index")
    return IntPoly(comb(k, i) * a for k, a in enumerate(f.c) if k >= i)


def cauchy_bound(f: IntPoly) -> Fraction:
    """C(f) = sum over the nonzero range of |a_i / a_n|."""
    if f.is_zero():
        raise ValueError("Cauchy bound of the zero polynomial")
    q = next(i for i, a in enumerate(f.c) if a)
    an = abs(f.lc())
    return Fraction(sum(abs(a) for a in f.c[q:]), an)


@dataclass(frozen=True)
class PolyMetrics:
    length: Fraction
    norm_sq: Fraction
    cauchy: Fraction
    mahler_lower: Fraction
    mahler_upper: Fraction


def metrics(f: IntPoly) -> PolyMetrics:
    """Length, squared norm, Cauchy bound and the coefficient Mahler bounds.

    ``mahler_upper`` is a rational upper bound of the 2-norm (rounded up).
    """
    length = Fraction(sum(abs(a) for a in f.c))
    nsq = Fraction(sum(a * a for a in f.c))
    up = Fraction(isqrt(int(nsq)) + (0 if isqrt(int(nsq)) ** 2 == nsq else 1))
    return PolyMetrics(length, nsq, cauchy_bound(f), length / 2 ** f.degree, up)


# ----------------------------------------------------------- subresultants

@dataclass(frozen=True)
class SubresultantData:
    sr: tuple[int, ...]   # principal subresultant coefficients sr_0 .. sr_k
    res: int


def _frac_strip(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def principal_subresultants_q(f: Sequence, g: Sequence) -> list[Fraction]:
    """Principal subresultant coefficients sr_0 .. sr_{min(n,m)} over Q.

    Coefficient lists are low to high with nonzero leading entries.  The
    entry of index min(n, m) is lc(g)**(n-m) when n > m (lc(f)**(m-n) when
    m > n) and 1 when n == m, matching the empty-determinant convention.
    """
    f = [Fraction(x) for x in f]
    g = [Fraction(x) for x in g]
    n, m = len(f) - 1, len(g) - 1
    if n < 0 or m < 0:
        raise ValueError("subresultants need nonzero polynomials")
    if n < m:
        out = principal_subresultants_q(g, f)
        return [s if ((n - j) * (m - j)) % 2 == 0 else -s for j, s in enumerate(out)]
    out = [Fraction(0)] * (m + 1)
    out[m] = g[-1] ** (n - m) if n > m else Fraction(1)
    if m == 0:
        if n == 0:
            out[0] = Fraction(1)
        return out
    _, r = divmod_rational(f, g)
    if not r:
        return out
    k = len(r) - 1
    base = g[-1] ** (n - k)
    inner = principal_subresultants_q(g, r)   # indices 0..k
    for j in range(k + 1):
        v = base * inner[j]
        if ((n - j) * (m - j)) % 2:
            v = -v
        out[j] = v
    return out


def subresultant_coefficients(f: IntPoly, g: IntPoly) -> list[int]:
    sr = principal_subresultants_q(f.c, g.c)
    out = []
    for s in sr:
        if s.denominator != 1:
            raise ArithmeticError("non-integral subresultant")
        out.append(int(s))
    return out


def subresultants(f: IntPoly, g: IntPoly) -> SubresultantData:
    if f.is_zero() or g.is_zero():
        raise ValueError("subresultants need nonzero polynomials")
    sr = tuple(subresultant_coefficients(f, g))
    return SubresultantData(sr, resultant(f, g))


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Sylvester resultant; Res(f, c) = c**deg f for a constant c."""
    if f.is_zero() or g.is_zero():
        return 0
    if g.degree == 0:
        return g.c[0] ** f.degree
    if f.degree == 0:
        return f.c[0] ** g.degree
    return subresultant_coefficients(f, g)[0]


def subdiscriminants(f: IntPoly) -> list[int]:
    """sDisc_0 .. sDisc_{n-1} with lc(f) * sDisc_k = sr_k(f, f')."""
    if f.degree < 1:
        raise ValueError("subdiscriminants need degree >= 1")
    if f.degree == 1:
        return [1]
    sr = subresultant_coefficients(f, f.derivative())
    lc = f.lc()
    out = []
    for k in range(f.degree):
        q, r = divmod(sr[k], lc)
        if r:
            raise ArithmeticError("lc(f) does not divide a subresultant")
        out.append(q)
    return out


def discriminant(f: IntPoly) -> int:
    """Disc(f) with lc(f) * Disc(f) = Res(f, f'); degree one gives 1."""
    return subdiscriminants(f)[0]


def distinct_root_count(f: IntPoly) -> int:
    """n - (first index with a nonzero subdiscriminant)."""
    sd = subdiscriminants(f)
    k = next(i for i, s in enumerate(sd) if s)
    return f.degree - k


def sylvester_sr_det(f: Sequence[int], g: Sequence[int], k: int) -> int:
    """sr_k from its determinant definition (used as an independent check)."""
    n, m = len(f) - 1, len(g) - 1
    size = n + m - 2 * k
    if size == 0:
        return 1
    cols = n + m - k   # powers n+m-k-1 .. 0
    rows = []
    for i in range(m - k):   # X^(m-k-1-i) f
        shift = m - k - 1 - i
        row = [0] * cols
        for p, a in enumerate(f):
            deg = p + shift
            row[cols - 1 - deg] = a
        rows.append(row)
    for i in range(n - k):
        shift = n - k - 1 - i
        row = [0] * cols
        for p, a in enumerate(g):
            deg = p + shift
            row[cols - 1 - deg] = a
        rows.append(row)
    mat = [r[:size] for r in rows]
    return bareiss_det(mat)


def bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def gdisc_abs(f: IntPoly) -> Fraction:
    """|GDisc(f)| = |tcoeff_U Res_X(f, sum_k U^(k-1) f^[k])| / |lc(f)|."""
    from .bpoly import IntPoly2, resultant_in_x
    if f.degree < 1:
        raise ValueError("generalized discriminant needs degree >= 1")
    n = f.degree
    # second argument as a polynomial in X with coefficients in Z[U]
    grid: dict[tuple[int, int], int] = {}
    for k in range(1, n + 1):
        t = taylor_coefficient(f, k)
        for i, a in enumerate(t.c):
            if a:
                grid[(i, k - 1)] = grid.get((i, k - 1), 0) + a
    F = IntPoly2.from_dict({(i, 0): a for i, a in enumerate(f.c) if a})
    G = IntPoly2.from_dict(grid)
    r = resultant_in_x(F, G)
    return Fraction(abs(r.tcoeff()), abs(f.lc()))
