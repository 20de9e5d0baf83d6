"""Exception hierarchy shared across the package."""


class TwoTowerError(Exception):
    """Base class for all package-specific errors."""


class NotFundamental(TwoTowerError):
    """The integer is not a fundamental quadratic field discriminant."""


class FactorizationFailed(TwoTowerError):
    """A composite cofactor survived the configured factoring effort."""


class BoundExceeded(TwoTowerError):
    """A discriminant exceeds the configured class-group bound."""


class SquareDiscriminant(TwoTowerError):
    """Form operations require a nonsquare discriminant."""


class DiscriminantMismatch(TwoTowerError):
    """Composed forms must share a discriminant."""


class NoSolution(TwoTowerError):
    """A residue system admits no solution."""


class NoSquareRoot(TwoTowerError):
    """Internal defect: a promised modular square root does not exist."""


class PreconditionUnmet(TwoTowerError):
    """An operation's stated hypotheses fail for the given input."""


class DivisibilityViolation(TwoTowerError):
    """Base field discriminant does not divide the extension's."""


class TemplateMismatch(TwoTowerError):
    """Partial tuple is inconsistent with the requested catalog case."""


class Exhausted(TwoTowerError):
    """No completion exists within the search bound."""
