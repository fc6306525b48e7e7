"""Exception hierarchy shared by the workbench modules."""


class EllpadicError(Exception):
    """Base class for all workbench errors."""


# -- p-adic arithmetic ------------------------------------------------------

class NotOneUnit(EllpadicError):
    """Argument is not congruent to 1 modulo p."""


class PrecisionExhausted(EllpadicError):
    """An operation consumed every significant p-adic digit."""


class SupersingularInput(EllpadicError):
    """a_p = 0 mod p: no unit root exists."""


class NoCandidate(EllpadicError):
    """No rational within the error bound has a small enough denominator."""


class Ambiguous(EllpadicError):
    """Error bound too loose for a unique rational reconstruction."""


class NotMultiplicative(EllpadicError):
    """j-invariant is integral at p: no Tate parameter."""


# -- measure algebra --------------------------------------------------------

class BadSupport(EllpadicError):
    """Point mass requested outside 1 + pZ_p."""


class DegreeOverflow(EllpadicError):
    """Series degree exceeds the configured maximum."""


class LevelMismatch(EllpadicError):
    """Character conductor exceeds the available level."""


class SingularMatrix(EllpadicError):
    """Basis change requested at a = 1."""


class SupportViolation(EllpadicError):
    """Dirichlet series has coefficients at multiples of p."""


# -- curves -----------------------------------------------------------------

class ZeroD(EllpadicError):
    """Quadratic twist by zero."""


class NotOrdinary(EllpadicError):
    """Curve is supersingular or additive at p."""


class SingularCurve(EllpadicError):
    """Weierstrass model has vanishing discriminant."""


# -- L-values ---------------------------------------------------------------

class Inconsistent(EllpadicError):
    """No functional-equation sign achieves t-independence."""


class RankCapExceeded(EllpadicError):
    """All derivatives up to the cap vanish at tolerance."""


class Imprimitive(EllpadicError):
    """Gauss sum requested for an imprimitive character."""


class BadConductor(EllpadicError):
    """Twisted functional equation undefined for this curve/character pair."""


class AdditiveReduction(EllpadicError):
    """Modified L-function undefined for additive reduction at p."""


# -- p-adic L-series --------------------------------------------------------

class ReconstructionFailed(EllpadicError):
    """Modular symbol did not reconstruct to a bounded rational."""


class NotSplitMultiplicative(EllpadicError):
    """Operation requires split multiplicative reduction at p."""


class NotSameType(EllpadicError):
    """Curves do not have ordinary reduction of the same type at p."""


class RankPositive(EllpadicError):
    """A central L-value required to be nonzero vanishes at tolerance."""


class NoCandidateBelowX(EllpadicError):
    """Twist search exhausted all discriminants below the bound."""


# -- CLI --------------------------------------------------------------------

class ParseError(EllpadicError):
    """Malformed curve file line; carries the line number."""


class CorruptCache(EllpadicError):
    """Cache file failed validation and will be rebuilt."""
