"""Deforming abelian elliptic representations into irreducible ones.

Representations of a braid-presented knot group are encoded as one unknown
block per generator: raw 2x2 real entries for SL(2,R), unit quaternions for
SU(2).  A continuation in the common generator trace tau starts at the
rotation representation (every generator maps to R(theta)) and walks away from
tau_0 = 2*cos(theta_0) in fixed steps, correcting each step's relator system
with damped least squares.

The first step has to leave the trivial (reducible) branch.  Near tau_0 the
irreducible branch sits at distance ~sqrt(|tau - tau_0|) from the abelian
point in representation space, so a fixed infinitesimal kick cannot reach it;
instead the solver scans a seeded ladder of kick radii inside the near-kernel
of the linearized system, keeping only solutions whose commutator traces
certify irreducibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .braid import FreeWord, KnotPresentation
from .errors import DimensionMismatch, NoConvergence, StuckReducible

RESIDUAL_TOL = 1e-10
MARGIN_TOL = 1e-6
KICK_RADII = (1e-3, 0.01, 0.02, 0.04, 0.08, 0.15, 0.3)
KERNEL_CUTOFF = 0.3
LOCAL_RADIUS = 1.5
MAX_RETRY_SEEDS = 20


# ---------------------------------------------------------------------------
# flavor backends

class _SL2R:
    """Blocks are 2x2 real matrices stored row-major (4 reals per generator)."""

    name = "SL2R"

    @staticmethod
    def identity():
        return np.array([1.0, 0.0, 0.0, 1.0])

    @staticmethod
    def abelian_block(theta):
        c, s = np.cos(theta), np.sin(theta)
        return np.array([c, -s, s, c])

    @staticmethod
    def mul(a, b):
        return np.array([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])

    @staticmethod
    def inv(a):
        d = a[0] * a[3] - a[1] * a[2]
        return np.array([a[3], -a[1], -a[2], a[0]]) / d

    @staticmethod
    def trace(a):
        return a[0] + a[3]

    @staticmethod
    def det(a):
        return a[0] * a[3] - a[1] * a[2]

    @staticmethod
    def normalize(a):
        return a


class _SU2:
    """Blocks are quaternions (a, b, c, d) <-> [[a+bi, c+di], [-c+di, a-bi]]."""

    name = "SU2"

    @staticmethod
    def identity():
        return np.array([1.0, 0.0, 0.0, 0.0])

    @staticmethod
    def abelian_block(theta):
        return np.array([np.cos(theta), np.sin(theta), 0.0, 0.0])

    @staticmethod
    def mul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return np.array([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])

    @staticmethod
    def inv(q):
        n = float(q @ q)
        return np.array([q[0], -q[1], -q[2], -q[3]]) / n

    @staticmethod
    def trace(q):
        return 2.0 * q[0]

    @staticmethod
    def det(q):
        return float(q @ q)

    @staticmethod
    def normalize(q):
        return q / np.linalg.norm(q)


_FLAVORS = {"SL2R": _SL2R, "SU2": _SU2}


def _flavor(name: str):
    try:
        return _FLAVORS[name]
    except KeyError:
        raise ValueError(f"unknown flavor {name!r}; expected SL2R or SU2") from None


# ---------------------------------------------------------------------------
# points and paths

@dataclass(frozen=True)
class RepPoint:
    """One numerical representation on a trace slice."""

    matrices: tuple        # per generator: 4-tuple block in the flavor encoding
    tau: float
    residual: float
    flavor: str

    def blocks(self):
        return [np.array(m, dtype=float) for m in self.matrices]

    def matrices_2x2(self):
        """Blocks as 2x2 arrays (complex for SU2)."""
        out = []
        for m in self.matrices:
            if self.flavor == "SL2R":
                a, b, c, d = m
                out.append(np.array([[a, b], [c, d]]))
            else:
                a, b, c, d = m
                out.append(np.array([[a + 1j * b, c + 1j * d],
                                     [-c + 1j * d, a - 1j * b]]))
        return out


@dataclass(frozen=True)
class CharacterCoords:
    """Traces at the distinct-index generator products (cyclic classes)."""

    words: tuple           # FreeWord entries
    traces: tuple          # floats, same order

    def as_dict(self):
        return {_word_key(w): t for w, t in zip(self.words, self.traces)}

    def distance(self, other: "CharacterCoords") -> float:
        assert self.words == other.words
        return float(max(abs(a - b) for a, b in zip(self.traces, other.traces)))


@dataclass(frozen=True)
class DeformationPath:
    points: tuple          # RepPoint, strictly monotone tau
    characters: tuple      # CharacterCoords per point
    margins: tuple         # irreducibility margin per point
    theta0: float
    side: str              # 'upper' | 'lower'
    flavor: str

    def __len__(self):
        return len(self.points)

    def to_json_dict(self):
        out = []
        for pt, ch, mg in zip(self.points, self.characters, self.margins):
            out.append({
                "tau": pt.tau,
                "residual": pt.residual,
                "margin": mg,
                "character": ch.as_dict(),
            })
        return {
            "theta0": self.theta0,
            "side": self.side,
            "flavor": self.flavor,
            "points": out,
        }

    def to_csv(self) -> str:
        lines = ["tau,residual,margin"]
        for pt, mg in zip(self.points, self.margins):
            lines.append(f"{pt.tau!r},{pt.residual!r},{mg!r}")
        return "\n".join(lines) + "\n"


def _word_key(w: FreeWord) -> str:
    return "*".join((f"x{l}" if l > 0 else f"x{-l}^-1") for l in w) or "1"


# ---------------------------------------------------------------------------
# residual system

def _unpack(x, n):
    return [x[4 * i: 4 * i + 4] for i in range(n)]


def _word_block(word: FreeWord, blocks, fl):
    out = fl.identity()
    for l in word:
        b = blocks[abs(l) - 1]
        out = fl.mul(out, b if l > 0 else fl.inv(b))
    return out


def _residual_vector(x, pres: KnotPresentation, tau, fl):
    blocks = _unpack(x, pres.n)
    parts = []
    for i in range(pres.n - 1):
        w = _word_block(pres.sigma_images[i], blocks, fl)
        parts.append(w - blocks[i])
    parts.append(np.array([fl.trace(b) - tau for b in blocks]))
    parts.append(np.array([fl.det(b) - 1.0 for b in blocks]))
    return np.concatenate(parts)


def relator_residual(p: KnotPresentation, r: RepPoint) -> np.ndarray:
    """Residual of the presentation equations at a representation point.

    Layout: 4 entries of sigma(x_i)(A) - A_i for i = 1..n-1 (the last relator
    is a consequence of the product identity and is dropped), then the trace
    slice conditions, then the determinant conditions.
    """
    if len(r.matrices) != p.n:
        raise DimensionMismatch(f"{len(r.matrices)} blocks for {p.n} generators")
    fl = _flavor(r.flavor)
    x = np.concatenate(r.blocks())
    return _residual_vector(x, p, r.tau, fl)


def irreducibility_margin(r: RepPoint, p: KnotPresentation) -> float:
    """max over generator pairs of |tr([A_i, A_j]) - 2|; 0 iff reducible on pairs."""
    if len(r.matrices) != p.n:
        raise DimensionMismatch(f"{len(r.matrices)} blocks for {p.n} generators")
    fl = _flavor(r.flavor)
    return _margin(np.concatenate(r.blocks()), p.n, fl)


def _margin(x, n, fl):
    blocks = _unpack(x, n)
    best = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            a, b = blocks[i], blocks[j]
            comm = fl.mul(fl.mul(a, b), fl.mul(fl.inv(a), fl.inv(b)))
            best = max(best, abs(fl.trace(comm) - 2.0))
    return float(best)


def character_words(n: int) -> tuple:
    """Distinct-index generator products, one per cyclic class.

    Full enumeration for n <= 4; for larger n only products of length <= 3
    plus the full product x_1...x_n are used.
    """
    seen = set()
    words = []

    def add(tup):
        classes = {tuple(tup[k:] + tup[:k]) for k in range(len(tup))}
        canon = min(classes)
        if canon not in seen:
            seen.add(canon)
            words.append(FreeWord(canon))

    max_len = n if n <= 4 else 3
    for r in range(1, max_len + 1):
        for tup in permutations(range(1, n + 1), r):
            add(tup)
    if n > 4:
        add(tuple(range(1, n + 1)))
    return tuple(words)


def character_coords(r: RepPoint, p: KnotPresentation) -> CharacterCoords:
    fl = _flavor(r.flavor)
    blocks = _unpack(np.concatenate(r.blocks()), p.n)
    words = character_words(p.n)
    traces = tuple(float(fl.trace(_word_block(w, blocks, fl))) for w in words)
    return CharacterCoords(words, traces)


def abelian_elliptic_rep(p: KnotPresentation, theta: float,
                         flavor: str = "SL2R") -> RepPoint:
    """Every generator maps to the rotation by theta; solves all relators exactly."""
    if not 0 < theta < np.pi:
        raise ValueError("theta must lie in (0, pi)")
    fl = _flavor(flavor)
    block = fl.abelian_block(theta)
    x = np.concatenate([block] * p.n)
    tau = 2.0 * np.cos(theta)
    res = float(np.max(np.abs(_residual_vector(x, p, tau, fl))))
    return RepPoint(tuple(tuple(b) for b in _unpack(x, p.n)), float(tau), res, flavor)


def classify_real_character(r: RepPoint, p: KnotPresentation,
                            boundary_tol: float = 1e-8) -> str:
    """'SL2R' | 'SU2' | 'reducible-boundary' from the character data.

    For two generators the sign of x^2+y^2+z^2-xyz-4 decides (negative is the
    bounded SU(2) region); otherwise the constructed flavor is reported, with
    tiny commutator margin classified as the reducible boundary.
    """
    coords = character_coords(r, p)
    if p.n == 2:
        lookup = coords.as_dict()
        x, y, z = lookup["x1"], lookup["x2"], lookup["x1*x2"]
        kappa = x * x + y * y + z * z - x * y * z - 4.0
        if abs(kappa) < boundary_tol:
            return "reducible-boundary"
        return "SU2" if kappa < 0 else "SL2R"
    if irreducibility_margin(r, p) < boundary_tol:
        return "reducible-boundary"
    return r.flavor


# ---------------------------------------------------------------------------
# damped least-squares continuation

def _jacobian(f, x, h=1e-7):
    f0 = f(x)
    J = np.empty((f0.size, x.size))
    for i in range(x.size):
        xp = x.copy()
        xp[i] += h
        J[:, i] = (f(xp) - f0) / h
    return J


def _lm_solve(f, x0, max_iter=200, tol=RESIDUAL_TOL, lam0=1e-3):
    """Levenberg-Marquardt with damping adapted by factors of 10."""
    x = x0.copy()
    F = f(x)
    cost = float(F @ F)
    lam = lam0
    for _ in range(max_iter):
        if np.max(np.abs(F)) < tol:
            break
        J = _jacobian(f, x)
        A = J.T @ J
        g = J.T @ F
        accepted = False
        for _ in range(25):
            try:
                dx = np.linalg.solve(A + lam * np.eye(x.size), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            xn = x + dx
            Fn = f(xn)
            cn = float(Fn @ Fn)
            if cn < cost:
                x, F, cost = xn, Fn, cn
                lam = max(lam / 10.0, 1e-14)
                accepted = True
                break
            lam *= 10.0
            if lam > 1e13:
                break
        if not accepted:
            break
    return x, float(np.max(np.abs(F)))


def _near_kernel(f, x0, cutoff=KERNEL_CUTOFF):
    J = _jacobian(f, x0)
    _, svals, vt = np.linalg.svd(J)
    rows = vt[svals < cutoff]
    if len(rows) == 0:
        rows = vt[-1:]
    return rows


def _abelian_vector(n, tau, fl):
    theta = np.arccos(np.clip(tau / 2.0, -1.0, 1.0))
    return np.concatenate([fl.abelian_block(theta)] * n)


def _first_point(pres, tau, fl, rng, seeds=MAX_RETRY_SEEDS):
    """Branch switch off the abelian solution at trace value tau.

    Returns (x, residual) or raises; tracks whether any retry converged onto
    a reducible point so the caller can distinguish StuckReducible.
    """
    if abs(tau) >= 2.0:
        raise NoConvergence(1)

    def f(x):
        return _residual_vector(x, pres, tau, fl)

    x_ab = _abelian_vector(pres.n, tau, fl)
    kernel = _near_kernel(f, x_ab)
    converged_reducible = False
    for _ in range(seeds):
        coeff = rng.standard_normal(len(kernel))
        coeff /= np.linalg.norm(coeff)
        direction = coeff @ kernel
        for radius in KICK_RADII:
            x, res = _lm_solve(f, x_ab + radius * direction)
            if res >= RESIDUAL_TOL:
                continue
            if np.linalg.norm(x - x_ab) > LOCAL_RADIUS:
                continue
            if _margin(x, pres.n, fl) > MARGIN_TOL:
                return x, res
            converged_reducible = True
    if converged_reducible:
        raise StuckReducible()
    raise NoConvergence(1)


def _rep_point(x, tau, res, n, flavor):
    return RepPoint(tuple(tuple(float(v) for v in b) for b in _unpack(x, n)),
                    float(tau), float(res), flavor)


def deform(p: KnotPresentation, theta0: float, side: str = "upper",
           flavor: str = "SL2R", steps: int = 20, step_size: float = 2.5e-3,
           seed: int = 0) -> DeformationPath:
    """Continuation path of irreducible representations leaving tau_0 = 2cos(theta0).

    The trace values are tau_k = tau_0 +/- k*step_size.  Every accepted point
    has relator residual below 1e-10 and commutator margin above 1e-6; the
    path stops with NoConvergence(k) carrying the partial path otherwise.
    """
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    fl = _flavor(flavor)
    tau0 = 2.0 * np.cos(theta0)
    sign = 1.0 if side == "upper" else -1.0
    rng = np.random.default_rng(seed)

    pts = []
    chars = []
    margins = []
    x_prev = x_prev2 = None
    for k in range(1, steps + 1):
        tau_k = tau0 + sign * k * step_size

        def f(x, _t=tau_k):
            return _residual_vector(x, p, _t, fl)

        if x_prev is None:
            try:
                x, res = _first_point(p, tau_k, fl, rng)
            except (NoConvergence, StuckReducible) as exc:
                exc.partial = _empty_path(theta0, side, flavor)
                raise
        else:
            guess = x_prev if x_prev2 is None else 2 * x_prev - x_prev2
            x, res = _lm_solve(f, guess)
            good = (res < RESIDUAL_TOL
                    and _margin(x, p.n, fl) > MARGIN_TOL
                    and np.linalg.norm(x - x_prev) < LOCAL_RADIUS)
            if not good:
                raise NoConvergence(k, _path(pts, chars, margins, theta0, side, flavor))
        point = _rep_point(x, tau_k, res, p.n, flavor)
        pts.append(point)
        chars.append(character_coords(point, p))
        margins.append(_margin(x, p.n, fl))
        x_prev2, x_prev = x_prev, x
    return _path(pts, chars, margins, theta0, side, flavor)


def _path(pts, chars, margins, theta0, side, flavor):
    return DeformationPath(tuple(pts), tuple(chars), tuple(float(m) for m in margins),
                           float(theta0), side, flavor)


def _empty_path(theta0, side, flavor):
    return _path([], [], [], theta0, side, flavor)


def abelian_character(p: KnotPresentation, theta0: float) -> CharacterCoords:
    """Character of the rotation representation at theta0 (trace 2cos(r*theta0)
    at a product of r distinct generators)."""
    words = character_words(p.n)
    traces = tuple(2.0 * np.cos(len(w) * theta0) for w in words)
    return CharacterCoords(words, traces)


def distinct_characters(p: KnotPresentation, tau: float, flavor: str,
                        n_seeds: int = 20, seed: int = 0,
                        dedup_tol: float = 1e-6):
    """Multi-seed search for irreducible characters on one trace slice.

    Runs the branch-switch solve once per seed and groups the converged
    irreducible points by their trace coordinates.  Returns the list of
    distinct CharacterCoords.
    """
    fl = _flavor(flavor)
    found = []
    for s in range(n_seeds):
        rng = np.random.default_rng(seed + s)
        try:
            x, res = _first_point(p, tau, fl, rng, seeds=1)
        except (NoConvergence, StuckReducible):
            continue
        point = _rep_point(x, tau, res, p.n, flavor)
        coords = character_coords(point, p)
        if not any(coords.distance(c) < dedup_tol for c in found):
            found.append(coords)
    return found
