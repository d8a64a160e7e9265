"""Exception types shared by all modules."""

from __future__ import annotations


class PolygraphError(Exception):
    """Base class for every error raised by polyrw."""


class GlobularViolation(PolygraphError):
    """Source and target of a generator are not parallel."""


class UnknownGenerator(PolygraphError):
    """A cell mentions a generator that was never declared."""


class DuplicateName(PolygraphError):
    """Two generators of the same dimension share a name."""


class EndpointMismatch(PolygraphError):
    """Two 1-cells (or 2-cells) are not composable horizontally."""


class BoundaryMismatch(PolygraphError):
    """Two 2-cells are not composable vertically."""


class IllFormed(PolygraphError):
    """A port graph is not a well-formed diagram."""


class EmptyBoundary(PolygraphError):
    """A rotation was requested on an empty boundary."""


class LabelMismatch(PolygraphError):
    """Wires that should be glued carry different labels."""


class NoSuchHole(PolygraphError):
    """Substitution into a hole that does not exist."""


class TypeMismatch(PolygraphError):
    """A filler does not have the type of the hole it fills."""


class UnknownName(PolygraphError):
    """An unknown builtin or generator name."""


class ArityMismatch(PolygraphError):
    """A term applies a symbol to the wrong number of arguments."""


class UnknownSymbol(PolygraphError):
    """A diagram uses a generator with no matrix interpretation."""


class RuleNotRespected(PolygraphError):
    """A rule's two sides have different images in the target monoid."""


class CollisionAtBound(PolygraphError):
    """Two distinct normal forms have the same image in the target monoid."""


class ParseError(PolygraphError):
    """Syntax error in a .poly file, with a location."""

    def __init__(self, message: str, line: int = 0, col: int = 0, expected: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        loc = f"{line}:{col}: " if line else ""
        tail = f" (expected {expected})" if expected else ""
        super().__init__(f"{loc}{message}{tail}")
