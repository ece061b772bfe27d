"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (the request itself is
malformed, CLI exit status 2) and :class:`MathematicalFailure` (the request
is well formed but no result can be certified, CLI exit status 1).
"""


class FormalArcsError(Exception):
    """Base class for every error raised by this package."""


class InputError(FormalArcsError):
    pass


class MathematicalFailure(FormalArcsError):
    pass


# --- core algebra ---------------------------------------------------------

class MismatchedRing(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotPolynomial(InputError):
    """A truncated (lossy) series was used where an exact polynomial is needed."""


class SubstitutionNotFinite(InputError):
    pass


# --- weierstrass / elimination --------------------------------------------

class ZeroSeries(MathematicalFailure):
    """The series is zero modulo m^(T+1)."""


class NotRegular(MathematicalFailure):
    pass


class SearchExhausted(MathematicalFailure):
    pass


class BudgetExhausted(MathematicalFailure):
    pass


# --- curve selection ------------------------------------------------------

class PointNotOnN(InputError):
    pass


class GammaNotOnN(InputError):
    pass


class ZIsEverything(MathematicalFailure):
    """Z contains N at the working truncation order."""


class NoBranchAvoidsZ(MathematicalFailure):
    """No lifted branch avoids Z at the requested order (not a nonexistence proof)."""


class TruncationTooCoarse(MathematicalFailure):
    pass


class AlgebraicExtensionRequired(MathematicalFailure):
    """A root lies outside the coefficient field.

    ``polynomial`` holds the offending irreducible factor as a coefficient list,
    lowest degree first.
    """

    def __init__(self, message, polynomial=None):
        super().__init__(message)
        self.polynomial = polynomial


# --- cli ------------------------------------------------------------------

class ParseError(InputError):
    def __init__(self, message, line=None, column=None, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = f"{line}:{column}: " if line is not None else ""
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(where + message)
