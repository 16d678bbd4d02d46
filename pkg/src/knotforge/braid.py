"""Braid words, their action on free groups, and braid-derived invariants.

A braid word is a sequence of nonzero letters; letter +m is the standard
generator swapping strands m, m+1 (with the left strand crossing over) and -m
its inverse.  Free-group elements are stored freely reduced as tuples of
signed generator indices.  The Alexander polynomial of a one-component closure
is computed from the reduced Burau matrix over Z[t, 1/t], obtained from the
unreduced one by restricting to the invariant subspace it preserves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IndexOutOfRange, NotAKnot
from .laurent import LaurentPoly, conway_normalize, exact_div


class FreeWord:
    """Freely reduced word in generators x_1, x_2, ...; -k encodes x_k^-1."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for l in letters:
            l = int(l)
            if l == 0:
                raise ValueError("letter 0 is not a generator")
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)
        self.letters = tuple(out)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(-l for l in reversed(self.letters)))

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if l > 0 else -1 for l in self.letters)

    def max_index(self) -> int:
        return max((abs(l) for l in self.letters), default=0)

    def __repr__(self):
        if not self.letters:
            return "FreeWord(1)"
        parts = []
        for l in self.letters:
            parts.append(f"x{l}" if l > 0 else f"x{-l}^-1")
        return "FreeWord(" + " ".join(parts) + ")"

    @staticmethod
    def generator(i: int) -> "FreeWord":
        return FreeWord((i,))


@dataclass(frozen=True)
class BraidWord:
    """Element of the n-strand braid group as a word in signed generators."""

    strands: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(l) for l in self.letters))
        if self.strands < 2:
            raise ValueError("need at least 2 strands")
        for l in self.letters:
            if l == 0 or abs(l) > self.strands - 1:
                raise ValueError(f"letter {l} out of range for {self.strands} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-l for l in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    @staticmethod
    def parse(text: str, strands: int) -> "BraidWord":
        """Accepts '1 1 -2' and the alias form 's1 s1 s2^-1'."""
        letters = []
        for tok in text.split():
            t = tok.lower()
            if t.startswith("s"):
                t = t[1:]
                if t.endswith("^-1"):
                    letters.append(-int(t[:-3]))
                    continue
            letters.append(int(t))
        return BraidWord(strands, tuple(letters))

    def format(self) -> str:
        return " ".join(str(l) for l in self.letters)


def _act_one(letter: int, w: FreeWord, n: int) -> FreeWord:
    """Apply one braid generator (or inverse) to a free word."""
    mu = abs(letter)
    out = []
    for l in w:
        g, pos = abs(l), l > 0
        if g < 1 or g > n:
            raise IndexOutOfRange(f"generator x{g} outside 1..{n}")
        if letter > 0:
            if g == mu:
                img = (mu, mu + 1, -mu)
            elif g == mu + 1:
                img = (mu,)
            else:
                img = (g,)
        else:
            if g == mu:
                img = (mu + 1,)
            elif g == mu + 1:
                img = (-(mu + 1), mu, mu + 1)
            else:
                img = (g,)
        out.extend(img if pos else tuple(-x for x in reversed(img)))
    return FreeWord(out)


def act(b: BraidWord, w: FreeWord) -> FreeWord:
    """Apply the braid's letters left to right to a free word."""
    if w.max_index() > b.strands:
        raise IndexOutOfRange(
            f"word uses x{w.max_index()} but the braid has {b.strands} strands")
    for letter in b.letters:
        w = _act_one(letter, w, b.strands)
    return w


def permutation(b: BraidWord) -> tuple:
    """Image tuple p with p[i] = image of strand i (0-indexed)."""
    p = list(range(b.strands))
    for l in b.letters:
        mu = abs(l) - 1
        p[mu], p[mu + 1] = p[mu + 1], p[mu]
    return tuple(p)


def _orbit_count(p) -> int:
    seen = set()
    count = 0
    for i in range(len(p)):
        if i in seen:
            continue
        count += 1
        j = i
        while j not in seen:
            seen.add(j)
            j = p[j]
    return count


@dataclass(frozen=True)
class KnotPresentation:
    """Group presented by <x_1..x_n | x_i = sigma(x_i)> for a braid sigma."""

    n: int
    sigma_images: tuple          # FreeWord images sigma(x_i), i = 1..n
    relators: tuple              # sigma(x_i) * x_i^-1, freely reduced
    components: int
    braid: BraidWord = field(compare=False)

    @property
    def is_knot(self) -> bool:
        return self.components == 1


def presentation(b: BraidWord) -> KnotPresentation:
    images = tuple(act(b, FreeWord.generator(i)) for i in range(1, b.strands + 1))
    relators = tuple(img * FreeWord.generator(i + 1).inverse()
                     for i, img in enumerate(images))
    for r in relators:
        assert r.exponent_sum() == 0
    return KnotPresentation(
        n=b.strands,
        sigma_images=images,
        relators=relators,
        components=_orbit_count(permutation(b)),
        braid=b,
    )


# ---------------------------------------------------------------------------
# Burau route to the Alexander polynomial

_T = LaurentPoly({1: 1})
_TI = LaurentPoly({-1: 1})
_ONE = LaurentPoly.one()


def _burau_letter(letter: int, n: int):
    M = [[_ONE if i == j else LaurentPoly.zero() for j in range(n)] for i in range(n)]
    mu = abs(letter) - 1
    if letter > 0:
        M[mu][mu] = LaurentPoly({0: 1, 1: -1})
        M[mu][mu + 1] = _T
        M[mu + 1][mu] = _ONE
        M[mu + 1][mu + 1] = LaurentPoly.zero()
    else:
        M[mu][mu] = LaurentPoly.zero()
        M[mu][mu + 1] = _ONE
        M[mu + 1][mu] = _TI
        M[mu + 1][mu + 1] = LaurentPoly({0: 1, -1: -1})
    return M


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[LaurentPoly.zero()] * m for _ in range(n)]
    for i in range(n):
        for l in range(k):
            a = A[i][l]
            if a.is_zero():
                continue
            for j in range(m):
                if not B[l][j].is_zero():
                    out[i][j] = out[i][j] + a * B[l][j]
    return out


def _burau_unreduced(b: BraidWord):
    n = b.strands
    M = [[_ONE if i == j else LaurentPoly.zero() for j in range(n)] for i in range(n)]
    for letter in b.letters:
        M = _matmul(M, _burau_letter(letter, n))
    return M


def _burau_reduced(b: BraidWord):
    """Restrict the unreduced matrix to its invariant subspace ker(1, t, ..., t^{n-1}).

    Basis w_i = t*e_i - e_{i+1}; coordinates are recovered by forward
    substitution, with the last row acting as a consistency check.
    """
    n = b.strands
    B = _burau_unreduced(b)
    R = [[LaurentPoly.zero()] * (n - 1) for _ in range(n - 1)]
    for i in range(n - 1):
        col = [B[r][i] * _T - B[r][i + 1] for r in range(n)]
        prev = LaurentPoly.zero()
        for j in range(n - 1):
            num = col[j] + prev if j else col[0]
            R[j][i] = num * _TI
            prev = R[j][i]
        if col[n - 1] + R[n - 2][i] != LaurentPoly.zero():
            raise AssertionError("Burau invariant-subspace restriction failed")
    return R


def _det(M):
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
        term = M[0][j] * _det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def alexander_from_braid(b: BraidWord) -> LaurentPoly:
    """Conway-normalized Alexander polynomial of the closure of b."""
    pres_components = _orbit_count(permutation(b))
    if pres_components != 1:
        raise NotAKnot(f"closure has {pres_components} components")
    n = b.strands
    R = _burau_reduced(b)
    M = [[R[i][j] - (_ONE if i == j else LaurentPoly.zero())
          for j in range(n - 1)] for i in range(n - 1)]
    raw = _det(M) * LaurentPoly({0: 1, 1: -1})
    raw = exact_div(raw, LaurentPoly({0: 1, n: -1}))
    return conway_normalize(raw)
