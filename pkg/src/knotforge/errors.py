"""Exception types shared across the package."""


class KnotForgeError(Exception):
    """Base class for all library errors."""


class NotNormalizable(KnotForgeError):
    """No unit +/-t^r makes the polynomial palindromic with value 1 at t=1."""


class NotPalindromic(KnotForgeError):
    """p(t) != p(1/t)."""


class ZeroPolynomial(KnotForgeError):
    """Operation undefined for the zero polynomial."""


class IndexOutOfRange(KnotForgeError):
    """Free-word generator index outside 1..n."""


class NotAKnot(KnotForgeError):
    """Braid closure has more than one component."""


class NotSeifert(KnotForgeError):
    """det(V - V^T) != 1, so V is not a Seifert matrix."""


class NotSeifertConsistent(KnotForgeError):
    """V + V^T is singular, contradicting an odd knot determinant."""


class SingularNearZero(KnotForgeError):
    """An eigenvalue enclosure straddles 0 at maximum precision."""


class InconsistentPair(KnotForgeError):
    """Determinant and signature violate the mod-4 relation."""


class EvenConstantTerm(KnotForgeError):
    """The odd-order criterion requires an odd constant coefficient."""


class DimensionMismatch(KnotForgeError):
    """Matrix count does not match the presentation's generator count."""


class PrecisionExhausted(KnotForgeError):
    """A certified comparison stayed undecided at the precision cap."""


class NoConvergence(KnotForgeError):
    """Continuation solver failed at some step.

    Attributes:
        step: 1-based continuation step that failed.
        partial: DeformationPath of the accepted points before the failure
            (may be empty).
    """

    def __init__(self, step, partial=None):
        super().__init__(f"continuation failed at step {step}")
        self.step = step
        self.partial = partial


class StuckReducible(KnotForgeError):
    """Solver converged but only onto reducible points, for every retry seed."""

    def __init__(self, message="all retries converged to reducible points", partial=None):
        super().__init__(message)
        self.partial = partial
