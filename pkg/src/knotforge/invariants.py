"""Seifert-matrix invariants: Alexander polynomial, Levine-Tristram signatures.

The signature of the Hermitian matrix H(w) = (1-w)V + (1-conj(w))V^T at
w = e^{i*alpha} is computed by inertia-preserving elimination over exact
rational intervals.  Only the enclosures of cos(alpha) and sin(alpha) carry
width; every subsequent operation is exact, so escalating their precision
always decides every pivot sign unless w sits at a zero of the Alexander
polynomial.  At w = -1 (and +-i) the entries are exact rationals and the
elimination is literally exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circle_zeros import unit_circle_zeros
from .errors import (InconsistentPair, NotSeifert, NotSeifertConsistent,
                     SingularNearZero)
from .exactiv import (CIv, DEFAULT_BITS, MAX_BITS, Iv, Undecided, cos_pi,
                      sin_pi)
from .laurent import LaurentPoly, to_palindromic


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer matrix V of the Seifert pairing; V - V^T must be unimodular."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise NotSeifert("matrix is not square")
        if n % 2:
            raise NotSeifert("Seifert matrices have even size")
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if _int_det(skew) != 1:
            raise NotSeifert("det(V - V^T) != 1")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def transpose(self):
        n = self.size
        return tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n))

    @staticmethod
    def from_rows(rows) -> "SeifertMatrix":
        return SeifertMatrix(tuple(tuple(r) for r in rows))


def _int_det(rows) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    assert det.denominator == 1
    return int(det)


def alexander_from_seifert(V: SeifertMatrix) -> LaurentPoly:
    """det(t^(1/2) V - t^(-1/2) V^T), computed as det(tV - V^T) * t^(-g)."""
    n = V.size
    if n == 0:
        return LaurentPoly.one()
    Vt = V.transpose()
    M = [[LaurentPoly({1: V.entries[i][j], 0: -Vt[i][j]}) for j in range(n)]
         for i in range(n)]
    det = _poly_det(M)
    return det.shift(-V.genus)


def _poly_det(M) -> LaurentPoly:
    n = len(M)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return M[0][0]
    total = LaurentPoly.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [[M[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = M[0][j] * _poly_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


# ---------------------------------------------------------------------------
# certified Hermitian inertia

def _hermitian_matrix(V: SeifertMatrix, c: Iv, s: Iv):
    """H = (1-c)(V + V^T) - i*s(V - V^T) entrywise as complex intervals."""
    n = V.size
    one = Iv.point(1)
    H = []
    for i in range(n):
        row = []
        for j in range(n):
            vij, vji = V.entries[i][j], V.entries[j][i]
            re = (one - c).scale(vij + vji)
            im = s.scale(vji - vij)
            if i == j:
                im = Iv.point(0)
            row.append(CIv(re, im))
        H.append(row)
    return H


def _inertia(H):
    """(n_plus, n_minus) of a Hermitian interval matrix.

    Diagonal pivots with decided sign are eliminated first (largest separation
    from zero wins); if every remaining diagonal entry straddles zero, a 2x2
    pivot on an off-diagonal entry of decided modulus is used.  Raises
    Undecided when no pivot can be certified, SingularNearZero when the
    remaining block is exactly zero.
    """
    H = [row[:] for row in H]
    idx = list(range(len(H)))
    n_pos = n_neg = 0
    while idx:
        best, best_sep = None, Fraction(0)
        for i in idx:
            sep = H[i][i].re.separation()
            if sep > best_sep:
                best, best_sep = i, sep
        if best is not None:
            p = H[best][best].re
            if p.lo > 0:
                n_pos += 1
            else:
                n_neg += 1
            idx.remove(best)
            piv = H[best][best]
            for r in idx:
                f = H[r][best] / piv
                for cidx in idx:
                    if cidx < r:
                        continue
                    upd = H[r][cidx] - f * H[best][cidx]
                    if cidx == r:
                        H[r][r] = CIv(upd.re, Iv.point(0))
                    else:
                        H[r][cidx] = upd
                        H[cidx][r] = upd.conj()
            continue
        # all remaining diagonal entries straddle zero
        pair = None
        for a_pos in range(len(idx)):
            for b_pos in range(a_pos + 1, len(idx)):
                a, b = idx[a_pos], idx[b_pos]
                m2 = H[a][b].abs2()
                if m2.lo > 0:
                    pair = (a, b)
                    break
            if pair:
                break
        if pair is None:
            if all(H[a][b].contains_zero() for a in idx for b in idx):
                widths = [H[a][b].re.width + H[a][b].im.width
                          for a in idx for b in idx]
                if max(widths) == 0:
                    raise SingularNearZero("Hermitian form is exactly singular")
            raise Undecided("no certifiable pivot")
        a, b = pair
        # 2x2 pivot [[haa, hab], [conj(hab), hbb]]; det < 0 certifies inertia (1,1)
        haa, hbb, hab = H[a][a], H[b][b], H[a][b]
        det = haa.re * hbb.re - hab.abs2()
        sgn = det.sign()  # may raise Undecided
        if sgn == 0:
            raise Undecided("2x2 pivot block is singular")
        if sgn < 0:
            n_pos += 1
            n_neg += 1
        else:
            tr = haa.re + hbb.re
            t_sgn = tr.sign()
            if t_sgn == 0:
                raise Undecided("2x2 pivot trace is zero with positive det")
            if t_sgn > 0:
                n_pos += 2
            else:
                n_neg += 2
        idx.remove(a)
        idx.remove(b)
        det_c = CIv(det, Iv.point(0))
        for r in idx:
            # f = [H[r][a], H[r][b]] * inv(P)
            fa = (H[r][a] * hbb - H[r][b] * hab.conj()) / det_c
            fb = (H[r][b] * haa - H[r][a] * hab) / det_c
            for cidx in idx:
                if cidx < r:
                    continue
                upd = H[r][cidx] - fa * H[a][cidx] - fb * H[b][cidx]
                if cidx == r:
                    H[r][r] = CIv(upd.re, Iv.point(0))
                else:
                    H[r][cidx] = upd
                    H[cidx][r] = upd.conj()
    return n_pos, n_neg


# fixed-point interval engine: endpoints are integers at a global scale 2^-Q.
# All rounding is outward, so enclosures remain rigorous; only speed differs
# from the exact path above.

def _fx_from_iv(x: Iv, Q: int):
    lo = (x.lo.numerator << Q) // x.lo.denominator
    hi = -((-x.hi.numerator << Q) // x.hi.denominator)
    return lo, hi


def _fx_add(a, b):
    return a[0] + b[0], a[1] + b[1]


def _fx_sub(a, b):
    return a[0] - b[1], a[1] - b[0]


def _fx_mul(a, b, Q):
    p1 = a[0] * b[0]
    p2 = a[0] * b[1]
    p3 = a[1] * b[0]
    p4 = a[1] * b[1]
    lo = min(p1, p2, p3, p4)
    hi = max(p1, p2, p3, p4)
    return lo >> Q, -((-hi) >> Q)


def _fx_recip(a, Q):
    lo, hi = a
    if lo <= 0 <= hi:
        raise ZeroDivisionError("interval contains zero")
    one = 1 << (2 * Q)
    # 1/x is decreasing on either sign branch: [floor(1/hi), ceil(1/lo)]
    return one // hi, -((-one) // lo)


def _cx_sub(a, b):
    return _fx_sub(a[0], b[0]), _fx_sub(a[1], b[1])


def _cx_mul(a, b, Q):
    re = _fx_sub(_fx_mul(a[0], b[0], Q), _fx_mul(a[1], b[1], Q))
    im = _fx_add(_fx_mul(a[0], b[1], Q), _fx_mul(a[1], b[0], Q))
    return re, im


def _cx_conj(a):
    return a[0], (-a[1][1], -a[1][0])


def _cx_abs2(a, Q):
    rr = _fx_mul(a[0], a[0], Q)
    ii = _fx_mul(a[1], a[1], Q)
    lo, hi = _fx_add(rr, ii)
    return max(0, lo), hi


def _cx_scale_re(a, r, Q):
    return _fx_mul(a[0], r, Q), _fx_mul(a[1], r, Q)


def _cx_div(a, b, Q):
    d = _cx_abs2(b, Q)
    num = _cx_mul(a, _cx_conj(b), Q)
    r = _fx_recip(d, Q)
    return _cx_scale_re(num, r, Q)


def _fx_sep(a):
    if a[0] > 0:
        return a[0]
    if a[1] < 0:
        return -a[1]
    return 0


def _inertia_fixed(V: SeifertMatrix, c: Iv, s: Iv, Q: int):
    """Fixed-point variant of _inertia; same pivoting logic, integer endpoints."""
    n = V.size
    one_q = 1 << Q
    cfx = _fx_from_iv(c, Q)
    sfx = _fx_from_iv(s, Q)
    omc = _fx_sub((one_q, one_q), cfx)
    zero = (0, 0)
    H = []
    for i in range(n):
        row = []
        for j in range(n):
            vij, vji = V.entries[i][j], V.entries[j][i]
            a, b = vij + vji, vji - vij
            re = (omc[0] * a, omc[1] * a) if a >= 0 else (omc[1] * a, omc[0] * a)
            im = (sfx[0] * b, sfx[1] * b) if b >= 0 else (sfx[1] * b, sfx[0] * b)
            if i == j:
                im = zero
            row.append((re, im))
        H.append(row)
    idx = list(range(n))
    n_pos = n_neg = 0
    while idx:
        best, best_sep = None, 0
        for i in idx:
            sep = _fx_sep(H[i][i][0])
            if sep > best_sep:
                best, best_sep = i, sep
        if best is not None:
            if H[best][best][0][0] > 0:
                n_pos += 1
            else:
                n_neg += 1
            idx.remove(best)
            piv = H[best][best]
            for r in idx:
                f = _cx_div(H[r][best], piv, Q)
                for cid in idx:
                    if cid < r:
                        continue
                    upd = _cx_sub(H[r][cid], _cx_mul(f, H[best][cid], Q))
                    if cid == r:
                        H[r][r] = (upd[0], zero)
                    else:
                        H[r][cid] = upd
                        H[cid][r] = _cx_conj(upd)
            continue
        pair = None
        for ap in range(len(idx)):
            for bp in range(ap + 1, len(idx)):
                a, b = idx[ap], idx[bp]
                if _cx_abs2(H[a][b], Q)[0] > 0:
                    pair = (a, b)
                    break
            if pair:
                break
        if pair is None:
            raise Undecided("no certifiable fixed-point pivot")
        a, b = pair
        haa, hbb, hab = H[a][a], H[b][b], H[a][b]
        det = _fx_sub(_fx_mul(haa[0], hbb[0], Q), _cx_abs2(hab, Q))
        if det[1] < 0:
            n_pos += 1
            n_neg += 1
        elif det[0] > 0:
            tr = _fx_add(haa[0], hbb[0])
            if tr[0] > 0:
                n_pos += 2
            elif tr[1] < 0:
                n_neg += 2
            else:
                raise Undecided("2x2 pivot trace undecided")
        else:
            raise Undecided("2x2 pivot determinant undecided")
        idx.remove(a)
        idx.remove(b)
        detc = (det, zero)
        for r in idx:
            fa = _cx_div(_cx_sub(_cx_mul(H[r][a], hbb, Q), _cx_mul(H[r][b], _cx_conj(hab), Q)), detc, Q)
            fb = _cx_div(_cx_sub(_cx_mul(H[r][b], haa, Q), _cx_mul(H[r][a], hab, Q)), detc, Q)
            for cid in idx:
                if cid < r:
                    continue
                upd = _cx_sub(H[r][cid], _fx_cx_add(_cx_mul(fa, H[a][cid], Q), _cx_mul(fb, H[b][cid], Q)))
                if cid == r:
                    H[r][r] = (upd[0], zero)
                else:
                    H[r][cid] = upd
                    H[cid][r] = _cx_conj(upd)
    return n_pos, n_neg


def _fx_cx_add(a, b):
    return _fx_add(a[0], b[0]), _fx_add(a[1], b[1])


def lt_signature(V: SeifertMatrix, alpha_pi,
                 start_bits: int = DEFAULT_BITS,
                 max_bits: int = MAX_BITS) -> int:
    """Levine-Tristram signature at w = e^{i*pi*alpha_pi}, alpha_pi in (0, 2).

    alpha_pi is the angle measured in units of pi (a Fraction keeps it exact;
    alpha_pi = 1 is the Murasugi signature and runs fully rationally).
    """
    alpha_pi = Fraction(alpha_pi)
    if not 0 < alpha_pi < 2:
        raise ValueError("angle must lie in (0, 2*pi)")
    if V.size == 0:
        return 0
    bits = start_bits
    while True:
        c = cos_pi(alpha_pi, bits)
        s = sin_pi(alpha_pi, bits)
        try:
            if c.is_point() and s.is_point():
                # rational omega (+-1, +-i): fully exact elimination
                n_pos, n_neg = _inertia(_hermitian_matrix(V, c, s))
            else:
                n_pos, n_neg = _inertia_fixed(V, c, s, Q=bits + 64)
            return n_pos - n_neg
        except Undecided:
            if c.is_point() and s.is_point():
                raise SingularNearZero(
                    f"H(e^{{i*pi*{alpha_pi}}}) is singular") from None
            bits *= 2
            if bits > max_bits:
                raise SingularNearZero(
                    f"eigenvalue sign undecided at {max_bits} bits; "
                    f"w = e^{{i*pi*{alpha_pi}}} is at or near a zero") from None


def murasugi_signature(V: SeifertMatrix) -> int:
    """Signature of V + V^T via exact rational symmetric elimination."""
    if V.size == 0:
        return 0
    try:
        return lt_signature(V, Fraction(1))
    except SingularNearZero:
        raise NotSeifertConsistent("V + V^T is singular") from None


def knot_determinant(V: SeifertMatrix) -> int:
    """|det(V + V^T)| = |Alexander(-1)|, a positive odd integer."""
    n = V.size
    d = abs(_int_det([[V.entries[i][j] + V.entries[j][i] for j in range(n)]
                      for i in range(n)]))
    if d % 2 == 0:
        raise NotSeifertConsistent("knot determinant must be odd")
    return d


def mod4_criterion(detK: int, sgnK: int) -> bool:
    """True iff det = 3 mod 4; checks det = (-1)^(sgn/2) mod 4 first."""
    if detK % 2 == 0 or detK <= 0:
        raise InconsistentPair("determinant must be a positive odd integer")
    if sgnK % 2:
        raise InconsistentPair("signature must be even")
    expected = 1 if (sgnK // 2) % 2 == 0 else 3
    if detK % 4 != expected:
        raise InconsistentPair(
            f"det = {detK} = {detK % 4} (mod 4) but sgn = {sgnK} forces {expected}")
    return detK % 4 == 3


def pretzel_determinant(q) -> tuple:
    """(is_knot, determinant) for the pretzel link P(q_1, ..., q_n)."""
    q = [int(x) for x in q]
    if len(q) < 3:
        raise ValueError("need at least 3 tangles")
    if any(x == 0 for x in q):
        raise ValueError("tangle parameters must be nonzero")
    evens = sum(1 for x in q if x % 2 == 0)
    is_knot = (evens == 0 and len(q) % 2 == 1) or evens == 1
    prod = 1
    for x in q:
        prod *= x
    total = sum(Fraction(prod, x) for x in q)
    return is_knot, abs(int(total))


# ---------------------------------------------------------------------------
# sampled signature profile

@dataclass(frozen=True)
class ExcludedArc:
    """Open angle interval (in units of pi) isolating one circle zero."""

    lo_pi: Fraction
    hi_pi: Fraction
    parity: str
    multiplicity: int


@dataclass(frozen=True)
class SignatureProfile:
    samples: tuple        # (alpha_pi: Fraction, signature: int), ascending
    excluded: tuple       # ExcludedArc entries, ascending
    jumps: tuple          # (arc, jump: int) with jump = sgn(above) - sgn(below)

    def value_ranges(self):
        """Maximal runs of consecutive samples with a constant value."""
        runs = []
        for a, v in self.samples:
            if runs and runs[-1][2] == v:
                runs[-1][1] = a
            else:
                runs.append([a, a, v])
        return [(lo, hi, v) for lo, hi, v in runs]

    def to_csv(self) -> str:
        lines = ["angle,signature"]
        for a, v in self.samples:
            lines.append(f"{float(a) * 3.141592653589793!r},{v}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "samples": [[f"{a.numerator}/{a.denominator}", v]
                        for a, v in self.samples],
            "excluded": [{
                "angle_over_pi": [f"{e.lo_pi.numerator}/{e.lo_pi.denominator}",
                                  f"{e.hi_pi.numerator}/{e.hi_pi.denominator}"],
                "parity": e.parity,
                "multiplicity": e.multiplicity,
            } for e in self.excluded],
            "jumps": [{
                "angle_over_pi": [f"{e.lo_pi.numerator}/{e.lo_pi.denominator}",
                                  f"{e.hi_pi.numerator}/{e.hi_pi.denominator}"],
                "jump": j,
                "jump_mod_4": j % 4,
            } for e, j in self.jumps],
        }


def excluded_arcs(V: SeifertMatrix, bits: int = DEFAULT_BITS,
                  refine_bits: int = 48):
    """Isolating angle arcs around the unit-circle zeros of the Alexander polynomial."""
    delta = to_palindromic(alexander_from_seifert(V))
    report = unit_circle_zeros(delta, refine_bits=refine_bits)
    arcs = []
    for root in report.roots:
        lo, hi = root.angle_enclosure(bits)
        arcs.append(ExcludedArc(lo, hi, root.parity, root.multiplicity))
        arcs.append(ExcludedArc(2 - hi, 2 - lo, root.parity, root.multiplicity))
    if report.at_minus_two:
        eps = Fraction(1, 2**refine_bits)
        parity = "odd" if report.at_minus_two % 2 else "even"
        arcs.append(ExcludedArc(1 - eps, 1 + eps, parity,
                                2 * report.at_minus_two))
    arcs.sort(key=lambda a: a.lo_pi)
    return arcs


def signature_profile(V: SeifertMatrix, samples: int,
                      start_bits: int = DEFAULT_BITS) -> SignatureProfile:
    """Sample sgn_K on a uniform grid, skipping isolating arcs around zeros."""
    if samples < 8:
        raise ValueError("need at least 8 samples")
    arcs = excluded_arcs(V, bits=start_bits)

    def covered(a_pi):
        return any(arc.lo_pi < a_pi < arc.hi_pi for arc in arcs)

    out = []
    for k in range(1, samples):
        a_pi = Fraction(2 * k, samples)
        if covered(a_pi):
            continue
        out.append((a_pi, lt_signature(V, a_pi, start_bits)))

    jumps = []
    for arc in arcs:
        below = lt_signature(V, arc.lo_pi, start_bits) if arc.lo_pi > 0 else 0
        above = lt_signature(V, arc.hi_pi, start_bits) if arc.hi_pi < 2 else 0
        jumps.append((arc, above - below))
    return SignatureProfile(tuple(out), tuple(arcs), tuple(jumps))
