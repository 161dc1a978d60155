"""Exception types shared across the package."""


class AngleForgeError(Exception):
    """Base class for all package errors."""


class CoincidentPoint(AngleForgeError):
    """A vertex coincides with one of its target points."""


class DegenerateAngle(AngleForgeError):
    """Collinear triple: the angle is 0 or pi and carries no cotangent."""


class TiedDirection(AngleForgeError):
    """Two points lie on the same ray from the vertex."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class TooFewPoints(AngleForgeError):
    """A census needs at least three points."""


class OracleMismatch(AngleForgeError):
    """Exact count and floating oracle count disagree."""


class ScaleExceeded(AngleForgeError):
    """Input larger than the exhaustive regime this operation supports."""


class NotConvexPosition(AngleForgeError):
    """The point set is not the vertex set of a convex polygon."""


class DegenerateSplit(AngleForgeError):
    """The horizontal split needs a rotation that could not be found."""


class LemmaViolation(AngleForgeError):
    """An exhaustively checked lemma failed; carries the counterexample."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class HypothesisUnmet(AngleForgeError):
    """A bound's hypothesis fails on this instance; carries the offender."""

    def __init__(self, msg, offender=None):
        super().__init__(msg)
        self.offender = offender


class DegeneratePair(AngleForgeError):
    """p = q or s = t: no angle-equality curve exists."""


class IdenticalPairs(AngleForgeError):
    """(p, q) = (s, t): the curve condition is vacuous."""


class ZeroPolynomial(AngleForgeError):
    """All coefficients vanish; no projective key exists."""


class ClassificationError(AngleForgeError):
    """Internal cross-validation of curve components failed."""


class PoleInAP(AngleForgeError):
    """The tangent recursion hit pi/2; the progression leaves the line."""


class CoincidentParameter(AngleForgeError):
    """Chord endpoints coincide on the circle."""


class SingularDenominator(AngleForgeError):
    """A derivative formula was evaluated exactly at its pole."""


class UnstableClustering(AngleForgeError):
    """Two-epsilon cluster counts disagree; raise the working precision."""
