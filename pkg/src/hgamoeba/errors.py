"""Exception types shared across the package."""


class HgamoebaError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HgamoebaError, ValueError):
    """Input is outside the mathematical domain of an operation."""


class InvalidTransformError(HgamoebaError, ValueError):
    """Monomial change of variables with a singular exponent matrix."""


class DegeneratePolytopeError(HgamoebaError, ValueError):
    """Vertex set whose convex hull is not full-dimensional."""


class InexactCoefficientError(HgamoebaError, TypeError):
    """An exact-arithmetic operation received a floating-coefficient polynomial."""


class ParseError(HgamoebaError, ValueError):
    """Malformed JSON input for one of the file formats."""


class NeedsDeeperPointError(HgamoebaError, ValueError):
    """Winding-number base point too close to the amoeba to be trusted."""
