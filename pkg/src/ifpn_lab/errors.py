"""Exception hierarchy. Mathematical verdicts are never raised, only returned."""


class IfpnError(Exception):
    """Root of every error raised by ifpn_lab."""


class GridError(IfpnError, ValueError):
    pass


class DimensionError(IfpnError, ValueError):
    pass


class UnknownNameError(IfpnError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class ParameterError(IfpnError, ValueError):
    pass


class DomainError(IfpnError, ValueError):
    """Operator applied outside its declared domain."""


class BracketExceeded(IfpnError):
    """No t below the bracket cap satisfies the α-norm predicate."""

    def __init__(self, point, alpha, cap, which="ascending"):
        self.point = tuple(point)
        self.alpha = alpha
        self.cap = cap
        self.which = which
        super().__init__(
            f"{which} α-norm search for x={list(self.point)} at α={alpha} passed cap {cap}"
        )


class ConfigError(IfpnError):
    def __init__(self, message, path="$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class ScenarioError(IfpnError):
    pass
