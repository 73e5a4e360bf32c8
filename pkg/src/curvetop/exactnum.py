"""Exact numbers and certified enclosures.

Dyadic numbers, rational intervals, disks and a small complex ball
arithmetic on Python integers.  Everything here is exact or rounds
outward, so every enclosure really contains the value it claims to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Union

Number = Union[int, Fraction]


class RefinementBudgetExceeded(RuntimeError):
    """An adaptive loop ran past its precision cap."""


# ---------------------------------------------------------------- dyadics

@dataclass(frozen=True)
class Dyadic:
    """The number ``mantissa * 2**exponent``, kept in canonical form."""

    mantissa: int
    exponent: int = 0

    def __post_init__(self):
        m, e = self.mantissa, self.exponent
        if m == 0:
            e = 0
        else:
            tz = (m & -m).bit_length() - 1
            if tz:
                m >>= tz
                e += tz
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_fraction(cls, q: Number) -> "Dyadic":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, -(den.bit_length() - 1))

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = min(self.exponent, other.exponent)
        return Dyadic((self.mantissa << (self.exponent - e))
                      + (other.mantissa << (other.exponent - e)), e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.exponent)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.to_fraction() < other.to_fraction()

    def __le__(self, other: "Dyadic") -> bool:
        return self.to_fraction() <= other.to_fraction()

    def bitsize(self) -> int:
        return self.mantissa.bit_length() + abs(self.exponent).bit_length()

    def decimal(self) -> str:
        return dyadic_decimal(self.to_fraction())


def is_dyadic(q: Number) -> bool:
    den = Fraction(q).denominator
    return den & (den - 1) == 0


def dyadic_decimal(q: Number) -> str:
    """Exact decimal expansion of a dyadic rational."""
    q = Fraction(q)
    den = q.denominator
    if den & (den - 1):
        raise ValueError(f"{q} is not dyadic")
    k = den.bit_length() - 1
    sign = "-" if q < 0 else ""
    num = abs(q.numerator) * 5 ** k
    if k == 0:
        return sign + str(num)
    digits = str(num).rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:].rstrip("0")
    return sign + whole + ("." + frac if frac else "")


def floor_dyadic(q: Number, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= q."""
    q = Fraction(q)
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits) if bits >= 0 \
        else Fraction(((q.numerator >> -bits) // q.denominator) << -bits)


def ceil_dyadic(q: Number, bits: int) -> Fraction:
    return -floor_dyadic(-Fraction(q), bits)


def simplest_dyadic_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic strictly inside (lo, hi) with as few bits as possible."""
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    bits = 0
    while True:
        c = floor_dyadic(hi, bits)
        if c == hi:
            c -= Fraction(1, 1 << bits) if bits >= 0 else Fraction(1 << -bits)
        if c > lo:
            # prefer the candidate of smallest magnitude at this scale
            d = ceil_dyadic(lo, bits)
            if d == lo:
                d += Fraction(1, 1 << bits)
            return d if abs(d) < abs(c) else c
        bits += 1


def bitsize(q: Number) -> int:
    """Bitsize of a rational: numerator bits plus denominator bits."""
    q = Fraction(q)
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


# -------------------------------------------------------------- intervals

@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    def contains(self, x: Number) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def bitsize(self) -> int:
        return max(bitsize(self.lo), bitsize(self.hi))


@dataclass(frozen=True)
class Disk:
    """Closed disk {z : |z - center| <= radius} with Gaussian rational center."""

    re: Fraction
    im: Fraction
    radius: Fraction

    def __post_init__(self):
        for k in ("re", "im", "radius"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.radius < 0:
            raise ValueError("negative radius")

    def contains(self, re: Number, im: Number = 0) -> bool:
        dr, di = Fraction(re) - self.re, Fraction(im) - self.im
        return dr * dr + di * di <= self.radius * self.radius

    def overlaps(self, other: "Disk") -> bool:
        dr, di = self.re - other.re, self.im - other.im
        s = self.radius + other.radius
        return dr * dr + di * di <= s * s

    def contains_disk(self, other: "Disk") -> bool:
        if other.radius > self.radius:
            return False
        dr, di = self.re - other.re, self.im - other.im
        s = self.radius - other.radius
        return dr * dr + di * di <= s * s

    def meets_real_axis(self) -> bool:
        return abs(self.im) <= self.radius

    def center_distance_lower(self, other: "Disk") -> Fraction:
        """A rational lower bound on the distance between the two centers."""
        dr, di = self.re - other.re, self.im - other.im
        return sqrt_lower(dr * dr + di * di)


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    return Fraction(isqrt(q.numerator * scale // q.denominator), 1 << bits)


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    return Fraction(isqrt(-(-q.numerator * scale // q.denominator)) + 1, 1 << bits)


# ---------------------------------------------------------- complex balls

class CBall:
    """Complex ball ``(re + i*im) * 2**exp`` with radius ``rad * 2**exp``.

    ``re``, ``im`` and ``rad`` are integers, ``rad >= 0``.  Arithmetic takes
    a working precision (bits kept in the center) and rounds outward.
    """

    __slots__ = ("re", "im", "rad", "exp")

    def __init__(self, re: int, im: int, rad: int, exp: int):
        self.re, self.im, self.rad, self.exp = re, im, rad, exp

    # construction
    @staticmethod
    def exact(value: Number, prec: int = 0) -> "CBall":
        q = Fraction(value)
        den = q.denominator
        if den & (den - 1) == 0:
            return CBall(q.numerator, 0, 0, -(den.bit_length() - 1))
        # round a non-dyadic rational to prec bits below its magnitude
        shift = max(prec, 64) - (abs(q.numerator).bit_length() - den.bit_length())
        m = (q.numerator << shift) // den if shift >= 0 else q.numerator // (den << -shift)
        return CBall(m, 0, 1, -shift)

    @staticmethod
    def from_interval(lo: Number, hi: Number, prec: int = 0) -> "CBall":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return CBall.exact(lo, prec)
        c = CBall.exact((lo + hi) / 2, prec)
        half = (hi - lo) / 2
        return c._widen(half)

    @staticmethod
    def from_disk(re: Number, im: Number, radius: Number, prec: int = 0) -> "CBall":
        a = CBall.exact(re, prec)
        b = CBall.exact(im, prec)
        e = min(a.exp, b.exp)
        ball = CBall(a.re << (a.exp - e), b.re << (b.exp - e),
                     (a.rad << (a.exp - e)) + (b.rad << (b.exp - e)), e)
        return ball._widen(Fraction(radius))

    def _widen(self, extra: Fraction) -> "CBall":
        """Add a nonnegative rational to the radius (rounded up)."""
        if extra == 0:
            return self
        # work at an exponent fine enough that rounding up costs little
        k = extra.numerator.bit_length() - extra.denominator.bit_length() - 32
        if k < self.exp:
            s = self.exp - k
            self = CBall(self.re << s, self.im << s, self.rad << s, k)
        e = self.exp
        if e >= 0:
            r = -(-extra.numerator // (extra.denominator << e))
        else:
            r = -(-(extra.numerator << -e) // extra.denominator)
        return CBall(self.re, self.im, self.rad + r, e)

    # arithmetic
    def __add__(self, other: "CBall") -> "CBall":
        e = min(self.exp, other.exp)
        s, t = self.exp - e, other.exp - e
        return CBall((self.re << s) + (other.re << t), (self.im << s) + (other.im << t),
                     (self.rad << s) + (other.rad << t), e)

    def __neg__(self) -> "CBall":
        return CBall(-self.re, -self.im, self.rad, self.exp)

    def __sub__(self, other: "CBall") -> "CBall":
        return self + (-other)

    def mul(self, other: "CBall", prec: int) -> "CBall":
        a, b, c, d = self.re, self.im, other.re, other.im
        re = a * c - b * d
        im = a * d + b * c
        n1 = abs(a) + abs(b)
        n2 = abs(c) + abs(d)
        rad = n1 * other.rad + n2 * self.rad + self.rad * other.rad
        return CBall(re, im, rad, self.exp + other.exp).round(prec)

    def scale_int(self, k: int) -> "CBall":
        return CBall(self.re * k, self.im * k, self.rad * abs(k), self.exp)

    def round(self, prec: int) -> "CBall":
        """Drop low-order center bits so the center keeps ``prec`` bits."""
        size = max(abs(self.re), abs(self.im)).bit_length()
        drop = size - prec
        rsize = self.rad.bit_length()
        # the radius need not be kept more accurately than the center
        drop = max(drop, rsize - 32) if rsize > 32 else drop
        if drop <= 0:
            return self
        re = self.re >> drop
        im = self.im >> drop
        rad = (self.rad >> drop) + 3
        return CBall(re, im, rad, self.exp + drop)

    # queries
    def contains_zero(self) -> bool:
        return self.re * self.re + self.im * self.im <= self.rad * self.rad

    def abs_upper(self) -> Fraction:
        s = self.re * self.re + self.im * self.im
        n = isqrt(s)
        if n * n < s:
            n += 1
        n += self.rad
        return _scaled(n, self.exp)

    def abs_lower(self) -> Fraction:
        n = isqrt(self.re * self.re + self.im * self.im) - self.rad
        return _scaled(max(n, 0), self.exp)

    def real_sign(self) -> int:
        """Sign of the real part if it is certain, else 0."""
        if self.re > self.rad:
            return 1
        if self.re < -self.rad:
            return -1
        return 0

    def imag_sign(self) -> int:
        if self.im > self.rad:
            return 1
        if self.im < -self.rad:
            return -1
        return 0

    def center(self) -> tuple[Fraction, Fraction]:
        return _scaled(self.re, self.exp), _scaled(self.im, self.exp)

    def radius(self) -> Fraction:
        return _scaled(self.rad, self.exp)

    def center_complex(self) -> complex:
        return complex(_ldexp(self.re, self.exp), _ldexp(self.im, self.exp))

    def __repr__(self) -> str:
        c = self.center_complex()
        return f"CBall({c}, ±{float(self.radius()):.3g})"


def _scaled(n: int, e: int) -> Fraction:
    return Fraction(n << e) if e >= 0 else Fraction(n, 1 << -e)


def _ldexp(n: int, e: int) -> float:
    from math import ldexp
    if n == 0:
        return 0.0
    shift = n.bit_length() - 60
    if shift > 0:
        return ldexp(float(n >> shift), e + shift)
    return ldexp(float(n), e)


def ball_horner(coeffs: list[CBall], x: CBall, prec: int) -> CBall:
    """Evaluate a polynomial with ball coefficients (low to high) at a ball."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc.mul(x, prec) + c
    return acc


def int_horner_ball(coeffs: tuple[int, ...] | list[int], x: CBall, prec: int) -> CBall:
    """Evaluate an integer polynomial (low to high) at a ball."""
    if not coeffs:
        return CBall(0, 0, 0, 0)
    acc = CBall(coeffs[-1], 0, 0, 0)
    for c in reversed(coeffs[:-1]):
        acc = acc.mul(x, prec)
        if c:
            acc = acc + CBall(c, 0, 0, 0)
    return acc


def approx_abs(enclose: Callable[[int], tuple[Fraction, Fraction]], L: int,
               max_bits: int = 1 << 16) -> Fraction:
    """Absolute ``L``-bit approximation of a refinable real number.

    ``enclose(p)`` must return rational bounds ``lo <= x <= hi`` that get
    tighter as ``p`` grows.  The result ``d`` satisfies ``|x - d| < 2**-L``.
    """
    p = L + 2
    target = Fraction(1, 1 << (L + 1)) if L >= -1 else Fraction(1 << (-L - 1))
    while p <= max_bits:
        lo, hi = enclose(p)
        if hi - lo < target:
            mid = (lo + hi) / 2
            # round the midpoint to a dyadic within 2**-(L+2)
            d = floor_dyadic(mid, L + 2)
            return d
        p *= 2
    raise RefinementBudgetExceeded(f"could not reach 2^-{L}")
