"""Exception hierarchy.

Every rejection raised by the library derives from :class:`PlaneFlowError`;
the command line maps those to exit code 1 and bare ``AssertionError`` to 2.
"""

from __future__ import annotations

__all__ = [
    "PlaneFlowError",
    "SelfLoop",
    "DuplicateDirectedEdge",
    "RotationMismatch",
    "EmbeddingNotPlanar",
    "Disconnected",
    "NoPath",
    "ForbiddenConfig",
    "AssumptionViolation",
    "DegreeTooSmall",
    "NotCubic",
    "NotPlane",
    "InvalidTree",
    "Infeasible",
    "InfeasibleComponent",
    "ParseError",
]


class PlaneFlowError(Exception):
    """Base class for structured rejections."""


# graph construction
class SelfLoop(PlaneFlowError):
    pass


class DuplicateDirectedEdge(PlaneFlowError):
    pass


class RotationMismatch(PlaneFlowError):
    pass


class EmbeddingNotPlanar(PlaneFlowError):
    pass


class Disconnected(PlaneFlowError):
    pass


# preprocessing
class NoPath(PlaneFlowError):
    pass


class ForbiddenConfig(PlaneFlowError):
    pass


class AssumptionViolation(PlaneFlowError):
    """The input does not satisfy the no-self-loop / degree / biconnectivity assumption."""


# transform / reassembling
class DegreeTooSmall(PlaneFlowError):
    pass


class NotCubic(PlaneFlowError):
    pass


class NotPlane(PlaneFlowError):
    pass


class InvalidTree(PlaneFlowError):
    pass


# typings / oracle
class Infeasible(PlaneFlowError):
    pass


class InfeasibleComponent(Infeasible):
    pass


class ParseError(PlaneFlowError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
