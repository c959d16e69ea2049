"""Exception hierarchy shared by all solver modules."""

from __future__ import annotations

from fractions import Fraction


class GameError(ValueError):
    """Base class for every error raised by this package."""


class InvalidGame(GameError):
    """A game violates a structural invariant.

    ``vertex`` names the first offending vertex when one exists.
    """

    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


class SinkVertex(InvalidGame):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no successor", vertex)


class BadDistribution(InvalidGame):
    def __init__(self, vertex: int, total: Fraction, reason: str = ""):
        msg = f"distribution of vertex {vertex} sums to {total}"
        if reason:
            msg = f"{msg} ({reason})"
        super().__init__(msg, vertex)
        self.total = total


class WeightOnControlledEdge(InvalidGame):
    def __init__(self, vertex: int):
        super().__init__(f"controlled vertex {vertex} carries edge weights", vertex)


class MissingPriority(InvalidGame):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no priority", vertex)


class DuplicateEdge(InvalidGame):
    def __init__(self, vertex: int, succ: int):
        super().__init__(f"edge {vertex}->{succ} listed twice", vertex)


class StrategyMismatch(GameError):
    """A strategy chooses a non-edge or misses one of its player's vertices."""


class RandomEdgeDropped(GameError):
    """An edge restriction would remove an edge of a random vertex."""


class DimensionMismatch(GameError):
    """A value vector does not match the game it is used with."""


class NotAnMC(GameError):
    """Operation needs a game without controlled vertices."""


class NotAnMDP(GameError):
    """Operation needs a game with at most one controlled player."""


class TwoControlledPlayers(NotAnMDP):
    pass


class TooLarge(GameError):
    """The instance exceeds a configured enumeration or size cap."""

    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


class BadDelta(GameError):
    pass


class NotAPrimedTarget(GameError):
    pass


class NotMutuallyOptimal(GameError):
    """The exact best-response certificate failed for lifted gadget strategies."""


class InfeasibleSpec(GameError):
    pass


class BadParameters(GameError):
    pass


class ParseError(GameError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NonEdgeChoice(ParseError):
    pass
