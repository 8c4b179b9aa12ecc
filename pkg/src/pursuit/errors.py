"""Exception types shared across the package."""


class PursuitError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(PursuitError):
    """Malformed or unsupported graph input."""


class DisconnectedError(GraphError):
    """Operation requires a connected graph."""


class NotOuterplanarError(GraphError):
    """Graph admits no outer circuit."""


class PolygonError(PursuitError):
    """Malformed polygon (too few vertices, repeated points, self-intersection)."""


class GameError(PursuitError):
    """Invalid game configuration or state."""


class IllegalMoveError(GameError):
    """A move violates the movement rules of the variant."""


class BudgetExceededError(PursuitError):
    """Exact solve would exceed the configured state/edge budget."""


class TooLargeError(PursuitError):
    """Instance exceeds a hard size bound of an exact algorithm."""


class DecompositionError(PursuitError):
    """Invalid cut decomposition or elimination tree."""


class StrategyError(PursuitError):
    """A constructive strategy reached a state it cannot handle."""
