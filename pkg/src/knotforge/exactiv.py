"""Exact rational interval arithmetic with certified transcendental enclosures.

Intervals carry Fraction endpoints, so ring operations are exact (no rounding
step ever widens them).  Width enters only through enclosures of pi, cos, sin
and acos, which are imported from mpmath's interval context at a requested bit
precision and converted to exact rational endpoints.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import PrecisionExhausted

DEFAULT_BITS = 128
MAX_BITS = 4096


def start_bits() -> int:
    """Default starting precision, overridable via KNOTFORGE_PRECISION_BITS."""
    raw = os.environ.get("KNOTFORGE_PRECISION_BITS")
    if raw:
        try:
            return max(53, int(raw))
        except ValueError:
            pass
    return DEFAULT_BITS


class Undecided(Exception):
    """A sign query could not be decided at the current enclosure width."""


def _to_fraction(x) -> Fraction:
    num, den = mpmath.libmp.to_rational(x)
    return Fraction(num, den)


@dataclass(frozen=True)
class Iv:
    """Closed real interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @staticmethod
    def point(x) -> "Iv":
        f = Fraction(x)
        return Iv(f, f)

    @staticmethod
    def of(lo, hi) -> "Iv":
        return Iv(Fraction(lo), Fraction(hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "Iv") -> "Iv":
        return Iv(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Iv") -> "Iv":
        return Iv(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Iv":
        return Iv(-self.hi, -self.lo)

    def __mul__(self, other: "Iv") -> "Iv":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Iv(min(products), max(products))

    def scale(self, c) -> "Iv":
        c = Fraction(c)
        if c >= 0:
            return Iv(self.lo * c, self.hi * c)
        return Iv(self.hi * c, self.lo * c)

    def __truediv__(self, other: "Iv") -> "Iv":
        if other.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        recips = (1 / other.lo, 1 / other.hi)
        return self * Iv(min(recips), max(recips))

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def sign(self) -> int:
        """-1, 0 (exact zero) or +1; raises Undecided if the sign is unknown."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        raise Undecided(f"sign of [{self.lo}, {self.hi}] undecided")

    def separation(self) -> Fraction:
        """Distance of the interval from 0 (0 if it touches)."""
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return -self.hi
        return Fraction(0)

    def __float__(self) -> float:
        return float(self.mid)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def outward_dyadic(self, bits: int) -> "Iv":
        """Widen outward to endpoints with denominator 2^bits (caps coefficient growth)."""
        scale = 1 << bits
        lo, hi = self.lo, self.hi
        if lo.denominator > scale:
            lo = Fraction((lo.numerator * scale) // lo.denominator, scale)
        if hi.denominator > scale:
            hi = Fraction(-((-hi.numerator * scale) // hi.denominator), scale)
        return Iv(lo, hi)


IV_ZERO = Iv(Fraction(0), Fraction(0))
IV_ONE = Iv(Fraction(1), Fraction(1))


@dataclass(frozen=True)
class CIv:
    """Rectangular complex interval: re + i*im with Iv components."""

    re: Iv
    im: Iv

    @staticmethod
    def point(re, im=0) -> "CIv":
        return CIv(Iv.point(re), Iv.point(im))

    def __add__(self, other: "CIv") -> "CIv":
        return CIv(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "CIv") -> "CIv":
        return CIv(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "CIv":
        return CIv(-self.re, -self.im)

    def __mul__(self, other: "CIv") -> "CIv":
        return CIv(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "CIv":
        return CIv(self.re, -self.im)

    def abs2(self) -> Iv:
        rr = self.re * self.re
        ii = self.im * self.im
        # x*x on an interval straddling 0 can dip below 0; clamp, |x|^2 >= 0.
        lo = max(Fraction(0), (rr + ii).lo)
        return Iv(lo, (rr + ii).hi)

    def __truediv__(self, other: "CIv") -> "CIv":
        d = other.abs2()
        if d.contains_zero():
            raise ZeroDivisionError("complex interval divisor contains zero")
        num = self * other.conj()
        return CIv(num.re / d, num.im / d)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def outward_dyadic(self, bits: int) -> "CIv":
        return CIv(self.re.outward_dyadic(bits), self.im.outward_dyadic(bits))

    def mid(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))


CIV_ZERO = CIv(IV_ZERO, IV_ZERO)
CIV_ONE = CIv(IV_ONE, IV_ZERO)


def _iv_to_rational(x) -> Iv:
    lo, hi = x._mpi_
    return Iv(_to_fraction(lo), _to_fraction(hi))


def pi_interval(bits: int = DEFAULT_BITS) -> Iv:
    ctx = mpmath.iv
    old = ctx.prec
    try:
        ctx.prec = bits
        return _iv_to_rational(ctx.pi)
    finally:
        ctx.prec = old


# cos(pi*p/q) is rational only for values in {0, +-1/2, +-1} (q | 3 after
# reduction, or q in {1, 2}).  Those cases are returned as exact points so the
# downstream Hermitian arithmetic at omega = -1, +-i stays fully rational.
_EXACT_COS = {
    (0, 1): Fraction(1),
    (1, 1): Fraction(-1),
    (1, 2): Fraction(0),
    (3, 2): Fraction(0),
    (1, 3): Fraction(1, 2),
    (2, 3): Fraction(-1, 2),
    (4, 3): Fraction(-1, 2),
    (5, 3): Fraction(1, 2),
}


def cos_pi(alpha_pi, bits: int = DEFAULT_BITS) -> Iv:
    """Enclosure of cos(pi * alpha_pi) for rational alpha_pi."""
    a = Fraction(alpha_pi) % 2
    key = (a.numerator, a.denominator)
    if key in _EXACT_COS:
        return Iv.point(_EXACT_COS[key])
    ctx = mpmath.iv
    old = ctx.prec
    try:
        ctx.prec = bits
        val = ctx.cos(ctx.pi * a.numerator / a.denominator)
        out = _iv_to_rational(val)
    finally:
        ctx.prec = old
    return Iv(max(out.lo, Fraction(-1)), min(out.hi, Fraction(1)))


def sin_pi(alpha_pi, bits: int = DEFAULT_BITS) -> Iv:
    return cos_pi(Fraction(1, 2) - Fraction(alpha_pi), bits)


def cos_pi_over(n: int, bits: int = DEFAULT_BITS) -> Iv:
    """Enclosure of cos(pi/n) for integer n >= 1."""
    return cos_pi(Fraction(1, n), bits)


def acos_enclosure(y: Fraction, bits: int = DEFAULT_BITS) -> Iv:
    """Certified enclosure of acos(y)/pi for exact rational y in [-1, 1].

    The candidate interval comes from mpmath at the working precision; it is
    then verified with interval cosine (cos is strictly decreasing on [0, pi]),
    widening until the verification passes.
    """
    y = Fraction(y)
    if not -1 <= y <= 1:
        raise ValueError("acos argument out of [-1, 1]")
    if y == 1:
        return IV_ZERO
    if y == -1:
        return IV_ONE
    old = mpmath.mp.prec
    try:
        mpmath.mp.prec = bits + 16
        a = mpmath.acos(mpmath.mpf(y.numerator) / y.denominator) / mpmath.pi
        approx = _to_fraction(a._mpf_)
    finally:
        mpmath.mp.prec = old
    pad = Fraction(1, 2 ** (bits - 4))
    for _ in range(64):
        lo = max(Fraction(0), approx - pad)
        hi = min(Fraction(1), approx + pad)
        # true acos(y)/pi lies in (lo, hi) iff cos(pi*lo) > y > cos(pi*hi)
        c_lo = cos_pi(lo, bits)
        c_hi = cos_pi(hi, bits)
        if (lo == 0 or c_lo.lo > y) and (hi == 1 or c_hi.hi < y):
            return Iv(lo, hi)
        pad *= 4
    raise PrecisionExhausted("acos enclosure could not be verified")


def compare_abs_cos(lhs: int, rhs: int, n: int,
                    start: int = DEFAULT_BITS, cap: int = MAX_BITS):
    """Decide |lhs| >= |rhs| * cos(pi/n) exactly for integers lhs, rhs.

    Returns (holds, strict).  n = 3 is a rational comparison; n = 4 squares
    against 1/2; n >= 5 escalates certified enclosures (a tie is impossible
    for integer inputs with rhs != 0 because cos(pi/n) is then irrational).
    """
    a, b = abs(lhs), abs(rhs)
    if n < 1:
        raise ValueError("n must be >= 1")
    if b == 0:
        return True, a > 0
    if n == 1:
        return a >= b, a > b
    if n == 2:
        return True, True
    if n == 3:
        return 2 * a >= b, 2 * a > b
    if n == 4:
        holds = 2 * a * a >= b * b
        return holds, holds
    bits = start
    while bits <= cap:
        thr = Iv.point(b) * cos_pi_over(n, bits)
        if a > thr.hi:
            return True, True
        if a < thr.lo:
            return False, False
        bits *= 2
    raise PrecisionExhausted(
        f"comparison |{lhs}| vs |{rhs}|cos(pi/{n}) undecided at {cap} bits"
    )
