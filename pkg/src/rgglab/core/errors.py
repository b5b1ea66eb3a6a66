"""Domain exceptions for rgglab."""


class RgglabError(Exception):
    """Base class for every error raised by rgglab."""


class InvalidParameterError(RgglabError, ValueError):
    """A parameter lies outside the range an operation accepts."""


class QuadratureError(RgglabError, RuntimeError):
    """Quadrature did not converge when the node count was doubled."""


class KernelDomainError(RgglabError, ValueError):
    """A kernel cannot be evaluated on the given geometry or takes invalid values."""


class SizeGuardError(RgglabError, ValueError):
    """An exact enumeration was asked for an input beyond its size guard."""


class NoCrossingError(RgglabError, RuntimeError):
    """A threshold search found no sign change on its search interval."""


class ConfigError(RgglabError, ValueError):
    """An experiment config file has one or more problems.

    Attributes:
        problems: ``(line, message)`` pairs, one per problem, in file order.
            ``line`` is 0 for problems not tied to a single line (e.g. a
            missing key).
    """

    def __init__(self, problems: list[tuple[int, str]]) -> None:
        self.problems = sorted(problems)
        lines = [
            f"line {line}: {message}" if line else message
            for line, message in self.problems
        ]
        super().__init__("invalid config:\n  " + "\n  ".join(lines))
