"""Exact integer Laurent polynomials and palindromic coefficient forms.

Values are immutable; every constructor strips zero coefficients, so equality
is structural.  Normalization fixes the representative with p(t) = p(1/t) and
p(1) = 1 among the unit multiples +/-t^r of a given polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotNormalizable, NotPalindromic, ZeroPolynomial
from .exactiv import CIv, Iv, CIV_ZERO, cos_pi, sin_pi, DEFAULT_BITS


class LaurentPoly:
    """Sparse Laurent polynomial in t with arbitrary-precision integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                v = int(v)
                if v:
                    c[int(e)] = c.get(int(e), 0) + v
                    if not c[int(e)]:
                        del c[int(e)]
        self._c = c

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def t_power(e: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: coeff})

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no degree span")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no degree span")
        return max(self._c)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, r: int) -> "LaurentPoly":
        """Multiply by t^r."""
        return LaurentPoly({e + r: v for e, v in self._c.items()})

    def invert_t(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def is_palindromic(self) -> bool:
        return all(self._c.get(-e, 0) == v for e, v in self._c.items())

    def eval_exact(self, x):
        """Value at an exact rational point (x != 0 if negative exponents occur)."""
        x = Fraction(x)
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * x**e
        return total if total.denominator != 1 else int(total)

    def __repr__(self):
        return f"LaurentPoly({self.format()!r})"

    def format(self) -> str:
        """Text form like '-1 + 1*t + 1*t^-1'."""
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            mag = abs(v)
            if e == 0:
                term = f"{mag}"
            elif e == 1:
                term = f"{mag}*t"
            else:
                term = f"{mag}*t^{e}"
            if not parts:
                parts.append(term if v > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if v > 0 else f"- {term}")
        return " ".join(parts)

    @staticmethod
    def parse(text: str) -> "LaurentPoly":
        """Parse the format() text form; exact round-trip with format()."""
        s = text.replace(" ", "").replace("^-", "^~")
        s = s.replace("-", "+-").replace("^~", "^-")
        terms = [t for t in s.split("+") if t]
        coeffs = {}
        for term in terms:
            if "*t" in term:
                cpart, tpart = term.split("*t", 1)
                coeff = int(cpart) if cpart not in ("", "-") else (-1 if cpart == "-" else 1)
                if tpart.startswith("^"):
                    e = int(tpart[1:])
                elif tpart == "":
                    e = 1
                else:
                    raise ValueError(f"bad term {term!r}")
            elif term in ("t", "-t"):
                coeff = -1 if term.startswith("-") else 1
                e = 1
            elif term.startswith("t^") or term.startswith("-t^"):
                coeff = -1 if term.startswith("-") else 1
                e = int(term.split("^", 1)[1])
            else:
                coeff = int(term)
                e = 0
            coeffs[e] = coeffs.get(e, 0) + coeff
        return LaurentPoly(coeffs)

    def to_pairs(self):
        """JSON-friendly coefficient list [[exponent, coefficient], ...]."""
        return [[e, v] for e, v in self.items()]


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a / b in Z[t, 1/t]; raises if the division is inexact."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero()
    rem = dict(a._c)
    be, bc = b.max_exp, b.coeff(b.max_exp)
    out = {}
    while rem:
        ae = max(rem)
        q, r = divmod(rem[ae], bc)
        if r:
            raise ValueError("inexact Laurent division")
        e = ae - be
        out[e] = q
        for e2, v2 in b._c.items():
            k = e2 + e
            rem[k] = rem.get(k, 0) - q * v2
            if not rem[k]:
                del rem[k]
    return LaurentPoly(out)


def conway_normalize(p: LaurentPoly) -> LaurentPoly:
    """Unique unit multiple q = +/-t^r p with q(t) = q(1/t) and q(1) = 1."""
    if p.is_zero():
        raise NotNormalizable("zero polynomial")
    lo, hi = p.min_exp, p.max_exp
    for r in range(-hi, -lo + 1):
        for s in (1, -1):
            q = LaurentPoly({e + r: s * v for e, v in p._c.items()})
            if q.is_palindromic() and q.eval_exact(1) == 1:
                return q
    raise NotNormalizable(f"no unit +/-t^r normalizes {p.format()!r}")


@dataclass(frozen=True)
class PalindromicForm:
    """Coefficients (a_0, ..., a_d) of P(t) = a_0 + sum_j a_j (t^j + t^-j)."""

    a: tuple

    def __post_init__(self):
        if not self.a:
            raise ValueError("need at least the constant coefficient")
        if len(self.a) > 1 and self.a[-1] == 0:
            raise ValueError("top coefficient a_d must be nonzero unless d = 0")
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))

    @property
    def d(self) -> int:
        return len(self.a) - 1

    def expand(self) -> LaurentPoly:
        c = {0: self.a[0]}
        for j in range(1, len(self.a)):
            if self.a[j]:
                c[j] = self.a[j]
                c[-j] = self.a[j]
        return LaurentPoly(c)

    def eval_exact(self, x):
        return self.expand().eval_exact(x)


def to_palindromic(p: LaurentPoly) -> PalindromicForm:
    """Extract (a_0, ..., a_d) from a palindromic polynomial."""
    if p.is_zero():
        raise NotPalindromic("zero polynomial has no palindromic form")
    if not p.is_palindromic():
        raise NotPalindromic(f"{p.format()!r} is not palindromic")
    d = max(p.max_exp, 0)
    return PalindromicForm(tuple(p.coeff(j) for j in range(d + 1)))


def chebyshev_transform(f: PalindromicForm) -> tuple:
    """Coefficients (ascending) of p(x) with P(t) = p(t + 1/t).

    Uses c_j(x) = x*c_{j-1}(x) - c_{j-2}(x) for c_j = t^j + t^-j, c_0 = 2,
    c_1 = x; deg p = d and the leading coefficient is a_d.
    """
    d = f.d
    out = [0] * (d + 1)
    out[0] = f.a[0]
    c_prev = [2]          # c_0
    c_cur = [0, 1]        # c_1
    for j in range(1, d + 1):
        for k, v in enumerate(c_cur):
            out[k] += f.a[j] * v
        if j < d:
            nxt = [0] + c_cur            # x * c_j
            for k, v in enumerate(c_prev):
                nxt[k] -= v
            c_prev, c_cur = c_cur, nxt
    return tuple(out)


class UnitAngle:
    """Exact point e^{i*pi*alpha_pi} on the unit circle, alpha_pi rational."""

    __slots__ = ("alpha_pi",)

    def __init__(self, alpha_pi):
        self.alpha_pi = Fraction(alpha_pi)

    def __repr__(self):
        return f"UnitAngle({self.alpha_pi})"


def evaluate(p: LaurentPoly, z, bits: int = DEFAULT_BITS) -> CIv:
    """Certified enclosure of p(z).

    z may be a complex/float/Fraction (treated as the exact rational point it
    denotes; the enclosure is then a point) or a UnitAngle for exact points
    e^{i*pi*a} on the unit circle, where transcendental enclosures at the
    requested precision apply.
    """
    if isinstance(z, UnitAngle):
        total = CIV_ZERO
        for e, v in p._c.items():
            c = cos_pi(e * z.alpha_pi, bits).scale(v)
            s = sin_pi(e * z.alpha_pi, bits).scale(v)
            total = total + CIv(c, s)
        return total
    zc = complex(z)
    re, im = Fraction(zc.real), Fraction(zc.imag)
    if re == 0 and im == 0:
        raise ValueError("evaluation point must be nonzero")
    zz = CIv(Iv.point(re), Iv.point(im))
    # exact rational arithmetic: split positive and negative exponent parts
    total = CIV_ZERO
    pos = CIv(Iv.point(1), Iv.point(0))
    e = 0
    for ee, v in sorted(p._c.items()):
        if ee < 0:
            continue
        while e < ee:
            pos = pos * zz
            e += 1
        total = total + CIv(pos.re.scale(v), pos.im.scale(v))
    neg = CIv(Iv.point(1), Iv.point(0)) / zz
    cur = CIv(Iv.point(1), Iv.point(0))
    e = 0
    for ee, v in sorted(p._c.items(), reverse=True):
        if ee >= 0:
            continue
        while e > ee:
            cur = cur * neg
            e -= 1
        total = total + CIv(cur.re.scale(v), cur.im.scale(v))
    return total
