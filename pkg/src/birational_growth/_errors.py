"""Exception hierarchy shared by every module of the package."""


class BirationalGrowthError(ValueError):
    """Base class for all errors raised by birational_growth."""


class ZeroInverse(BirationalGrowthError, ZeroDivisionError):
    """Inversion of the zero element was requested."""


class ReducibleModulus(BirationalGrowthError):
    """The modulus of a number field shares a factor with an element."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class NotDivisible(BirationalGrowthError):
    """Exact division left a remainder; ``witness`` is the offending term."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegreeMismatch(BirationalGrowthError):
    pass


class InvalidParameter(BirationalGrowthError):
    pass


class ResourceLimit(BirationalGrowthError):
    pass


class NonLinearFactor(BirationalGrowthError):
    """A Jacobian determinant did not split into lines over the coefficient field."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class NotCollapsed(BirationalGrowthError):
    pass


class NoInverseAvailable(BirationalGrowthError):
    pass


class ExtensionNeeded(BirationalGrowthError):
    """Coordinates live outside the coefficient field.

    ``minimal_polynomial`` is the irreducible factor that has no root in the
    field and ``points`` holds whatever was found before giving up.
    """

    def __init__(self, message, minimal_polynomial=None, points=()):
        super().__init__(message)
        self.minimal_polynomial = minimal_polynomial
        self.points = tuple(points)


class NonIsolatedFixedPoints(BirationalGrowthError):
    def __init__(self, message, curve=None):
        super().__init__(message)
        self.curve = curve


class TowerTooDeep(BirationalGrowthError):
    pass


class NotOnCollapsedCurve(BirationalGrowthError):
    pass


class IndeterminateJet(BirationalGrowthError):
    """The induced map has no well-defined value on the germ.

    ``center`` is set when the image point is determined but the fiber
    direction depends on the germ (the point merges into a blown-up center).
    """

    def __init__(self, message, center=None):
        super().__init__(message)
        self.center = center


class InconsistentChain(BirationalGrowthError):
    pass


class UnsupportedListSize(BirationalGrowthError):
    pass


class InsufficientData(BirationalGrowthError):
    """Too few terms to certify a recurrence; ``provisional`` holds the best fit."""

    def __init__(self, message, provisional=None):
        super().__init__(message)
        self.provisional = provisional


class UnclassifiableSpectrum(BirationalGrowthError):
    pass


class DegenerateSolutionSpace(BirationalGrowthError):
    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension


class NotFiniteOrder(BirationalGrowthError):
    pass


class ParseError(BirationalGrowthError):
    pass


class ValidationError(BirationalGrowthError):
    def __init__(self, message, path=None):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class BadReduction(BirationalGrowthError, ArithmeticError):
    """A denominator vanishes modulo the chosen prime, or a random line hit the indeterminacy locus."""
