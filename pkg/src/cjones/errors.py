"""Exception hierarchy shared by every cjones module.

The CLI turns these into exit codes: ParseError exits 4 and every other
CJonesError exits 3.
"""


class CJonesError(Exception):
    """Base class for all library errors."""


class ConfigError(CJonesError, ValueError):
    """Invalid environment or precision settings."""


class ParseError(CJonesError, ValueError):
    """Knot-expression or braid-word syntax error at a byte offset."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        self.message = message
        super().__init__(f"error at {offset}: {message}")


class ShapeError(CJonesError, ValueError):
    """Matrix has the wrong shape for the requested operation."""


class UnsupportedLinkError(CJonesError):
    """A braid closure with more than one component."""


class UnsupportedEvaluationError(CJonesError):
    """No colored Jones formula is available for an atom."""

    def __init__(self, atom: str, reason: str = ""):
        self.atom = atom
        detail = f": {reason}" if reason else ""
        super().__init__(f"cannot evaluate colored Jones polynomial of '{atom}'{detail}")


# -----------------------------------------------------------------------------
# Domain errors
# -----------------------------------------------------------------------------

class DomainError(CJonesError, ValueError):
    """Input lies outside the region where a formula is defined."""


class DegeneratePointError(DomainError):
    """Evaluation point where a quotient degenerates (q^{1/2} = ±1, [N] = 0)."""


class OutOfDomainError(DomainError):
    """Meridian parameter u outside the tracked search box."""


class BranchDegenerationError(DomainError):
    """The two l-roots collide on the continuation path."""

    def __init__(self, point, message: str = "branch collision"):
        self.point = point
        super().__init__(f"{message} at u = {point}")


# -----------------------------------------------------------------------------
# Numerical failures
# -----------------------------------------------------------------------------

class QuadratureError(CJonesError, ArithmeticError):
    """Composite Gauss-Legendre rule did not settle within the halving budget."""


class SingularFitError(CJonesError, ArithmeticError):
    """Least-squares design matrix is rank deficient."""


class NonRealValueError(CJonesError, ArithmeticError):
    """A value that must be real and positive came out with a phase."""


# -----------------------------------------------------------------------------
# Delta-calculus refusals
# -----------------------------------------------------------------------------

class DeltaRuleError(CJonesError):
    """Base class for expressions the rule engine does not decide."""


class NoRuleError(DeltaRuleError):
    """No representation of the requested class exists."""


class RuleNotDerivableError(DeltaRuleError):
    """Hypotheses of the applicable lemma are not all asserted."""


class StructuralError(DeltaRuleError):
    """Expression shape is not admitted by the rules (e.g. hopf under '#')."""
