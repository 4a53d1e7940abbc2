"""Exception hierarchy.

Every domain failure raised by the library derives from ``LagfibError``;
the CLI maps those to exit status 1 and ``SchemaError`` to exit status 2.
"""


class LagfibError(Exception):
    """Base class for domain errors."""


class DimensionMismatch(LagfibError, ValueError):
    pass


class NoSolution(LagfibError):
    """The integer system has no solution over Z."""


class NotPrimitive(LagfibError, ValueError):
    """The vector has gcd != 1, so it cannot be completed to a basis."""


class NotUnimodular(LagfibError, ValueError):
    pass


class RelatorViolated(LagfibError):
    """A relator (or a declared loop word) does not evaluate as required."""

    def __init__(self, message, relator=None):
        super().__init__(message)
        self.relator = relator


class PresentationMismatch(LagfibError, ValueError):
    pass


class NotAComplex(LagfibError):
    """Composite coboundary maps are not zero."""


class NerveMismatch(LagfibError, ValueError):
    pass


class TwistingMismatch(NerveMismatch):
    """Same nerve, different edge local systems."""


class CocycleViolation(LagfibError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class Unrealizable(LagfibError):
    pass


class DegenerateLocus(LagfibError, ValueError):
    """Point on the axis x1 = x2 = 0 where arg and log are undefined."""


class BranchCutProximity(LagfibError):
    """Finite-difference stencil straddles the branch cut of arg."""


class SchemaError(LagfibError, ValueError):
    """A document failed to parse or validate."""
