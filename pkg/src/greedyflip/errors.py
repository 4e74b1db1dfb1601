"""Exception types raised by greedyflip."""


class GreedyFlipError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMatrix(GreedyFlipError, ValueError):
    """Malformed Coxeter matrix or unknown type string."""


class OrbitBoundExceeded(GreedyFlipError):
    """Root orbit grew past the configured cap (group is infinite or unsupported)."""


class NotAFacet(GreedyFlipError, ValueError):
    """Position set whose complement is not a reduced expression of rho."""


class NotFlippable(GreedyFlipError, ValueError):
    pass


class EmptyComplex(GreedyFlipError):
    """The word contains no reduced expression of rho."""


class CapExceeded(GreedyFlipError):
    """Exhaustive computation refused because the input is too large."""


class NotTypeA(GreedyFlipError, ValueError):
    pass
