"""Unit-circle zeros of palindromic integer polynomials, with exact multiplicities.

The pipeline substitutes x = t + 1/t, square-free-decomposes the image over Q
(Yun), and isolates the real roots of each square-free factor in (-2, 2) with
Sturm sequences over exact rationals.  A root x* in (-2, 2) of multiplicity m
corresponds to the conjugate pair t = e^{+-i*arccos(x*/2)} of zeros of the same
multiplicity m; zeros at t = +-1 (x = +-2) are counted by exact division and
reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import EvenConstantTerm, ZeroPolynomial
from .exactiv import DEFAULT_BITS, Iv, acos_enclosure, compare_abs_cos
from .laurent import PalindromicForm, chebyshev_transform

# ---------------------------------------------------------------------------
# dense univariate polynomials, ascending coefficients (int or Fraction)

def _strip(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _deg(p):
    return len(p) - 1


def _neg(p):
    return [-c for c in p]


def _sub(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return _strip(out)


def _mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _strip(out)


def _scale(p, c):
    return _strip([a * c for a in p])


def _deriv(p):
    return _strip([i * c for i, c in enumerate(p)][1:])


def _eval(p, x):
    total = 0
    for c in reversed(p):
        total = total * x + c
    return total


def _divmod_q(p, q):
    """Quotient and remainder over Q."""
    if not q:
        raise ZeroDivisionError
    rem = [Fraction(c) for c in p]
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = Fraction(q[-1])
    while len(rem) >= len(q) and _strip(rem):
        rem = _strip(rem)
        if len(rem) < len(q):
            break
        k = len(rem) - len(q)
        c = rem[-1] / lead
        quo[k] = c
        for i, b in enumerate(q):
            rem[k + i] -= c * b
        rem = rem[:-1]
    return _strip(quo), _strip(rem)


def _primitive(p):
    """Integer primitive part with positive leading coefficient."""
    from math import gcd

    if not p:
        return []
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = _neg(ints)
    return ints


def _monic(p):
    lc = p[-1]
    return [Fraction(c) / lc for c in p]


def _gcd_q(a, b):
    """Monic gcd over Q; gcd(a, 0) is monic a."""
    a = [Fraction(c) for c in _strip(list(a))]
    b = [Fraction(c) for c in _strip(list(b))]
    while b:
        _, r = _divmod_q(a, b)
        a, b = b, _strip(r)
    return _monic(a) if a else []


def _div_q(p, q):
    """Exact quotient over Q; raises on a nonzero remainder."""
    if not _strip(list(p)):
        return []
    quo, rem = _divmod_q(p, q)
    if _strip(rem):
        raise ValueError("inexact polynomial division")
    return quo


def _div_exact(p, q):
    """Exact quotient of integer polynomials, returned primitive."""
    quo = _div_q(p, q)
    return _primitive(quo) if quo else []


def squarefree_decomposition(p):
    """Yun decomposition: (g_i, i) with p = unit * prod g_i^i, g_i primitive.

    Exact bookkeeping runs over monic rationals; only the emitted factors are
    converted back to primitive integer polynomials.
    """
    p0 = _primitive(list(p))
    if not p0:
        raise ZeroPolynomial("zero polynomial")
    if _deg(p0) == 0:
        return []
    f = _monic(p0)
    fp = _deriv(f)
    g = _gcd_q(f, fp)
    if _deg(g) == 0:
        return [(p0, 1)]
    c = _div_q(f, g)
    w = _div_q(fp, g)
    out = []
    i = 1
    while _deg(c) > 0:
        y = _sub(w, _deriv(c))
        a = _gcd_q(c, y)
        if _deg(a) > 0:
            out.append((_primitive(a), i))
        c = _div_q(c, a)
        w = _div_q(y, a) if _strip(y) else []
        i += 1
    return out


def _sturm_chain(p):
    chain = [[Fraction(c) for c in p], [Fraction(c) for c in _deriv(p)]]
    while _strip(chain[-1]):
        _, r = _divmod_q(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return [c for c in chain if _strip(c)]


def _variations(chain, x):
    signs = []
    for p in chain:
        v = _eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    count = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            count += 1
    return count


def _count_roots(chain, lo, hi):
    """Number of distinct real roots in (lo, hi] for a square-free polynomial."""
    return _variations(chain, lo) - _variations(chain, hi)


def _isolate_squarefree(p, lo, hi):
    """Disjoint isolating intervals (l, u), p(l)p(u) != 0, one root inside each.

    Requires p square-free with p(lo) != 0 and p(hi) != 0.
    """
    chain = _sturm_chain(p)

    def split(l, u, n_roots, out):
        if n_roots == 0:
            return
        if n_roots == 1 and _eval(p, l) * _eval(p, u) != 0:
            out.append((l, u))
            return
        m = (l + u) / 2
        if _eval(p, m) == 0:
            # rational root exactly at the midpoint: shrink a bracket around it
            delta = (u - l) / 4
            while _count_roots(chain, m - delta, m + delta) > 1 or \
                    _eval(p, m - delta) == 0 or _eval(p, m + delta) == 0:
                delta /= 2
            out.append((m - delta, m + delta))
            split(l, m - delta, _count_roots(chain, l, m - delta), out)
            split(m + delta, u, _count_roots(chain, m + delta, u), out)
            return
        split(l, m, _count_roots(chain, l, m), out)
        split(m, u, _count_roots(chain, m, u), out)

    total = _count_roots(chain, lo, hi)
    out = []
    split(Fraction(lo), Fraction(hi), total, out)
    out.sort()
    return out


def _refine(p, l, u, width):
    """Bisect (l, u) below the requested width, keeping the sign change of p."""
    sl = 1 if _eval(p, l) > 0 else -1
    while u - l > width:
        m = (l + u) / 2
        vm = _eval(p, m)
        if vm == 0:
            # nudge the cut off the root; the interval still brackets it
            m = l + (u - l) * Fraction(7, 16)
            vm = _eval(p, m)
            if vm == 0:
                m = l + (u - l) * Fraction(9, 16)
                vm = _eval(p, m)
                if vm == 0:
                    break
        if (1 if vm > 0 else -1) == sl:
            l = m
        else:
            u = m
    return l, u


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class CircleZero:
    """One isolated root of the transform p(x) inside (-2, 2)."""

    interval: tuple          # (Fraction lo, Fraction hi), root strictly inside
    multiplicity: int
    parity: str              # 'odd' | 'even'

    def angle_enclosure(self, bits: int = DEFAULT_BITS) -> tuple:
        """Outward enclosure (lo, hi) of alpha/pi, where the zero is e^{i*alpha}."""
        l, u = self.interval
        a_hi = acos_enclosure(max(Fraction(-1), l / 2), bits)
        a_lo = acos_enclosure(min(Fraction(1), u / 2), bits)
        return (a_lo.lo, a_hi.hi)


@dataclass(frozen=True)
class UnitCircleZeroReport:
    """Zeros of a palindromic polynomial on the unit circle, by Chebyshev image."""

    roots: tuple             # CircleZero entries, disjoint intervals, sorted
    at_minus_two: int        # multiplicity of x = -2, i.e. half the t = -1 order
    at_two: int              # multiplicity of x = +2, i.e. half the t = +1 order

    def odd_roots(self):
        return [r for r in self.roots if r.parity == "odd"]

    def to_json_dict(self, bits: int = DEFAULT_BITS) -> dict:
        roots = []
        for r in self.roots:
            lo, hi = r.interval
            a_lo, a_hi = r.angle_enclosure(bits)
            roots.append({
                "interval": [f"{lo.numerator}/{lo.denominator}",
                             f"{hi.numerator}/{hi.denominator}"],
                "multiplicity": r.multiplicity,
                "parity": r.parity,
                "angle_over_pi": [f"{a_lo.numerator}/{a_lo.denominator}",
                                  f"{a_hi.numerator}/{a_hi.denominator}"],
                "angle_radians": [float(a_lo) * 3.141592653589793,
                                  float(a_hi) * 3.141592653589793],
            })
        return {
            "roots": roots,
            "at_minus_two": self.at_minus_two,
            "at_two": self.at_two,
        }


DEFAULT_REFINE_BITS = 32


def unit_circle_zeros(f: PalindromicForm,
                      refine_bits: int = DEFAULT_REFINE_BITS) -> UnitCircleZeroReport:
    """Exact unit-circle zero report for P(t) = a_0 + sum a_j (t^j + t^-j)."""
    p = list(chebyshev_transform(f))
    if not _strip(p):
        raise ZeroPolynomial("zero polynomial")
    p = _primitive(p)

    at_two = 0
    while _eval(p, 2) == 0:
        p = _div_exact(p, [-2, 1])
        at_two += 1
    at_minus_two = 0
    while _eval(p, -2) == 0:
        p = _div_exact(p, [2, 1])
        at_minus_two += 1

    width = Fraction(1, 2**refine_bits)
    factors = squarefree_decomposition(p)
    fac_of = {}
    roots = []
    for g, mult in factors:
        for (l, u) in _isolate_squarefree(g, Fraction(-2), Fraction(2)):
            l, u = _refine(g, l, u, width)
            roots.append(CircleZero((l, u), mult, "odd" if mult % 2 else "even"))
            fac_of[mult] = g
    roots.sort(key=lambda r: r.interval[0])

    # distinct square-free factors have distinct roots; refine until the
    # reported intervals are pairwise disjoint
    changed = True
    while changed:
        changed = False
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.interval[1] > b.interval[0]:
                wa = (a.interval[1] - a.interval[0]) / 4
                wb = (b.interval[1] - b.interval[0]) / 4
                na = _refine(fac_of[a.multiplicity], *a.interval, wa)
                nb = _refine(fac_of[b.multiplicity], *b.interval, wb)
                roots[i] = CircleZero(na, a.multiplicity, a.parity)
                roots[i + 1] = CircleZero(nb, b.multiplicity, b.parity)
                changed = True
        roots.sort(key=lambda r: r.interval[0])

    return UnitCircleZeroReport(tuple(roots), at_minus_two, at_two)


def has_odd_order_unit_zero(f: PalindromicForm):
    """(found, witness interval) for an odd-order zero off t = +-1."""
    report = unit_circle_zeros(f)
    odd = report.odd_roots()
    if odd:
        return True, odd[0].interval
    return False, None


# ---------------------------------------------------------------------------
# coefficient criterion

@dataclass(frozen=True)
class CriterionVerdict:
    holds: bool
    witness_j: Optional[int]
    strict: bool


def km_holds_at(f: PalindromicForm, j: int, bits: int = DEFAULT_BITS):
    """Decide |a_j| >= |a_0| * cos(pi / (floor(d/j) + 2)); returns (holds, strict)."""
    if not 1 <= j <= f.d:
        raise ValueError("j out of range")
    n = f.d // j + 2
    return compare_abs_cos(f.a[j], f.a[0], n, start=bits)


def km_inequality(f: PalindromicForm, strict_only: bool = False,
                  bits: int = DEFAULT_BITS) -> CriterionVerdict:
    """Scan j = 1..d for the unit-circle-zero inequality; smallest witness wins."""
    for j in range(1, f.d + 1):
        holds, strict = km_holds_at(f, j, bits)
        if holds and (strict or not strict_only):
            return CriterionVerdict(True, j, strict)
    return CriterionVerdict(False, None, False)


def criterion_odd_order(f: PalindromicForm, bits: int = DEFAULT_BITS) -> bool:
    """Coefficient test guaranteeing an odd-order unit-circle zero (odd a_0)."""
    if f.a[0] % 2 == 0:
        raise EvenConstantTerm(f"a_0 = {f.a[0]} is even")
    return km_inequality(f, bits=bits).holds


def is_lspace_form(f: PalindromicForm) -> bool:
    """Coefficients all +-1 and alternating in sign from exponent d down to 0."""
    if f.a[-1] == 0:
        return False
    nonzero = [(j, f.a[j]) for j in range(f.d, -1, -1) if f.a[j]]
    if nonzero[-1][0] != 0:
        return False
    for (_, u), (_, v) in zip(nonzero, nonzero[1:]):
        if u * v != -1:
            return False
    return abs(nonzero[0][1]) == 1
