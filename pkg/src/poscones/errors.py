"""Exception hierarchy.

The CLI maps these onto exit codes: :class:`ParseError` is a parse failure
(2), :class:`Unsupported` means the model kind cannot do the computation (4),
everything else is a semantic error (3).
"""


class PosconesError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PosconesError):
    pass


class SemanticError(PosconesError):
    pass


class Unsupported(PosconesError):
    pass


class RingMismatch(SemanticError):
    pass


class CodimMismatch(SemanticError):
    pass


class BoxViolation(SemanticError):
    pass


class InvalidHN(SemanticError):
    pass


class RangeError(SemanticError):
    pass


class ZeroVector(SemanticError):
    pass


class SingularPairing(SemanticError):
    pass


class DimMismatch(SemanticError):
    pass


class NotSymmetric(SemanticError):
    pass


class UnboundSymbol(SemanticError):
    pass


class NoGGBundles(SemanticError):
    pass


class MissingEff(Unsupported):
    pass
