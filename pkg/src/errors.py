from typing import Optional


class GraphicRegionsError(ValueError):
    """Base class for domain errors; `tag` is the stable name reported by the CLI."""

    tag = "GraphicRegionsError"
    _registry: dict = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        GraphicRegionsError._registry[cls.__name__] = cls

    def to_dict(self) -> dict:
        return {"error": self.tag, "message": str(self)}


def error_from_tag(tag: str, message: str) -> GraphicRegionsError:
    """Rebuilds a domain error from its tag, e.g. after it was carried through workflow state."""
    cls = GraphicRegionsError._registry.get(tag, GraphicRegionsError)
    return cls(message)


class OddSum(GraphicRegionsError):
    tag = "OddSum"


class Underflow(GraphicRegionsError):
    tag = "Underflow"


class InvalidRegion(GraphicRegionsError):
    tag = "InvalidRegion"


class TooLarge(GraphicRegionsError):
    tag = "TooLarge"


class NotGraphic(GraphicRegionsError):
    tag = "NotGraphic"


class InvalidTrail(GraphicRegionsError):
    tag = "InvalidTrail"

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message if position is None else f"{message} (position {position})")
        self.position = position


class NotAPartition(GraphicRegionsError):
    tag = "NotAPartition"


class PreconditionViolated(GraphicRegionsError):
    tag = "PreconditionViolated"


class NeighborhoodsDiffer(GraphicRegionsError):
    tag = "NeighborhoodsDiffer"


class NeighborhoodsEqual(GraphicRegionsError):
    tag = "NeighborhoodsEqual"


class CaseMismatch(GraphicRegionsError):
    tag = "CaseMismatch"


class NotAnEdge(GraphicRegionsError):
    tag = "NotAnEdge"


class AlreadyAnEdge(GraphicRegionsError):
    tag = "AlreadyAnEdge"


class DegenerateVertices(GraphicRegionsError):
    tag = "DegenerateVertices"


class InternalInvariantFailure(GraphicRegionsError):
    tag = "InternalInvariantFailure"


class InconclusiveSearch(GraphicRegionsError):
    tag = "InconclusiveSearch"


class OddR(GraphicRegionsError):
    tag = "OddR"


class Infeasible(GraphicRegionsError):
    tag = "Infeasible"


class SigmaOutsideWindow(GraphicRegionsError):
    tag = "SigmaOutsideWindow"


class EmptyWindow(GraphicRegionsError):
    tag = "EmptyWindow"


class ParityImpossible(GraphicRegionsError):
    tag = "ParityImpossible"


class TooFewEdges(GraphicRegionsError):
    tag = "TooFewEdges"
