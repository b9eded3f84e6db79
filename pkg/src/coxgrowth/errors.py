"""Exception hierarchy shared across the package.

Every rejection that callers may want to branch on gets its own class; the
message carries the witness or offending value where there is one.
"""


class CoxGrowthError(Exception):
    """Base class for all package errors."""


# -- diagram construction / queries ------------------------------------------

class DiagramError(CoxGrowthError):
    pass


class DuplicateEdge(DiagramError):
    pass


class InvalidLabel(DiagramError):
    pass


class BadIndex(DiagramError):
    pass


class BadInjection(DiagramError):
    pass


# -- polynomial arithmetic ----------------------------------------------------

class PolynomialError(CoxGrowthError):
    pass


class InvalidBlock(PolynomialError):
    pass


class ZeroInput(PolynomialError):
    pass


class NotMonic(PolynomialError):
    pass


class NotSquarefree(PolynomialError):
    pass


class OnCircleOrDegenerate(PolynomialError):
    """Unit-disk root counting hit a root on the boundary circle."""


class BadIsolation(PolynomialError):
    pass


# -- growth series pipeline ---------------------------------------------------

class GrowthError(CoxGrowthError):
    pass


class NotApplicable(GrowthError):
    """Input violates a hypothesis of the requested operation."""


class DimensionTooHigh(NotApplicable):
    pass


class WrongChi(GrowthError):
    pass


class Edgeless(GrowthError):
    pass


class ClassificationAnomaly(GrowthError):
    """An invariant that should hold for every valid input was violated."""


class SeriesAnomaly(ClassificationAnomaly):
    pass


# -- family generation / scanning ---------------------------------------------

class FamilyError(CoxGrowthError):
    pass


class BadFamily(FamilyError):
    pass


class MixedLabels(FamilyError):
    pass


class ScanTooLarge(FamilyError):
    pass
