"""Exception hierarchy shared by all ovoidlab modules."""


class OvoidlabError(Exception):
    """Base class for every error raised by ovoidlab."""


class ZeroInverse(OvoidlabError):
    """Multiplicative inverse of zero requested."""


class ZeroElement(OvoidlabError):
    """An operation required a nonzero field element."""


class SizeGuard(OvoidlabError):
    """Requested geometry exceeds the desk-scale guard (use force=True)."""


class SamePoint(OvoidlabError):
    """Two distinct points were required."""


class DuplicatePoint(OvoidlabError):
    """Distinct points were required."""


class NotSkew(OvoidlabError):
    """Pairwise skew lines were required."""


class NoPolarity(OvoidlabError):
    """No symplectic polarity fits the given point set (not an ovoid?)."""


class NoIrreducibleConstant(OvoidlabError):
    """No constant a with y^2 + y + a irreducible was found."""


class EvenDegree(OvoidlabError):
    """Suzuki-Tits ovoids require odd extension degree n."""


class NotAnOvoid(OvoidlabError):
    """The point set violates the ovoid property."""


class NoQuadric(OvoidlabError):
    """No quadratic form has the given point set as its exact zero set."""


class NotAFibration(OvoidlabError):
    """The ovoid family does not partition the point set."""


class NotASpread(OvoidlabError):
    """The line set is not a spread."""


class NotRegular(OvoidlabError):
    """The spread is not regular (or its fixing group has the wrong order)."""


class SpreadNotTangent(OvoidlabError):
    """A spread line is not tangent to the given ovoid."""


class IndexOutOfRange(OvoidlabError):
    """A point or line index is out of range for the active geometry."""


class LengthMismatch(OvoidlabError):
    """Bit vectors of different lengths were combined."""


class EmptyMatrix(OvoidlabError):
    """An operation required at least one matrix row."""
