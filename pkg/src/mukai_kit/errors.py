"""Exception hierarchy shared by the library and the command line tool."""


class MukaiError(Exception):
    """Base class for every error raised by mukai_kit."""


class DimensionError(MukaiError, ValueError):
    """Vectors or matrices live on lattices of different rank."""


class DomainError(MukaiError, ValueError):
    """An argument lies outside the domain of an operation."""


class RegimeError(MukaiError):
    """Stability parameters violate a required strict inequality."""


class HypothesisError(MukaiError):
    """The input does not satisfy the hypothesis of the statement being evaluated."""


class ConfigError(MukaiError):
    """A configuration document failed to parse or validate.

    ``violations`` holds ``(field_path, message)`` pairs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{path}: {text}" for path, text in self.violations)
        super().__init__(msg)
