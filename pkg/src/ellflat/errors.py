"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`EllflatError`;
the command-line front end reports the class name and exits with status 1.
"""


class EllflatError(ValueError):
    """Base class for all domain errors."""


# fiber types and monodromy
class ParseError(EllflatError):
    pass


class NonMinimal(EllflatError):
    """Vanishing orders with ord(a) >= 4 and ord(b) >= 6."""


class Inconsistent(EllflatError):
    """Vanishing orders matching no row of the Kodaira table."""


class UnrecognizedClass(EllflatError):
    """A monodromy matrix that is not a product of Kodaira representatives."""


class NotSL2(EllflatError):
    pass


# collisions
class IncompatibleJFamilies(EllflatError):
    pass


class MissingMultiplicity(EllflatError):
    pass


class InvalidMultiplicity(EllflatError):
    pass


class InconsistentMultiplicity(EllflatError):
    """Multiplicity data that would put alpha outside [0, 2)."""


class NotSectionCase(EllflatError):
    pass


class NotGood(EllflatError):
    pass


# surfaces
class UnknownClass(EllflatError):
    pass


class NotExceptional(EllflatError):
    pass


# polynomials and Weierstrass data
class ZeroPolynomial(EllflatError):
    pass


class DegenerateFibration(EllflatError):
    pass


class NonMinimalModel(EllflatError):
    pass


class BudgetExhausted(EllflatError):
    pass


class IrrationalCenter(EllflatError):
    """A non-SNC point that is not defined over the rationals."""


class ScenarioError(EllflatError):
    pass
