from typing import Any, Dict, FrozenSet, Iterable, List, Literal, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

Edge = Tuple[int, int]


class DegreeSequence(BaseModel):
    """Positional degree vector: entry i is the degree of vertex i. Never sorted implicitly."""
    model_config = ConfigDict(frozen=True)

    degrees: Tuple[int, ...]

    @field_validator("degrees")
    @classmethod
    def _check_degrees(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(value) == 0:
            raise ValueError("a degree sequence needs at least one entry")
        for position, degree in enumerate(value):
            if degree < 0:
                raise ValueError(f"negative degree {degree} at position {position}")
        return value

    @classmethod
    def of(cls, degrees: Iterable[int]) -> "DegreeSequence":
        return cls(degrees=tuple(degrees))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def sorted_desc(self) -> Tuple[int, ...]:
        return tuple(sorted(self.degrees, reverse=True))

    def to_list(self) -> List[int]:
        return list(self.degrees)

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.degrees)


class Perturbation(BaseModel):
    """The vector 1^{+i,+j} (sign plus) or 1^{-i,-j} (sign minus), stored with i <= j."""
    model_config = ConfigDict(frozen=True)

    sign: Literal["plus", "minus"]
    i: int
    j: int

    @model_validator(mode="before")
    @classmethod
    def _canonical_order(cls, data: Any) -> Any:
        if isinstance(data, dict) and "i" in data and "j" in data and data["i"] > data["j"]:
            data = dict(data)
            data["i"], data["j"] = data["j"], data["i"]
        return data

    @field_validator("i", "j")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("perturbation indices are non-negative")
        return value

    @classmethod
    def plus(cls, i: int, j: int) -> "Perturbation":
        return cls(sign="plus", i=i, j=j)

    @classmethod
    def minus(cls, i: int, j: int) -> "Perturbation":
        return cls(sign="minus", i=i, j=j)


class GraphicVerdict(BaseModel):
    """Erdős–Gallai outcome; failing_k is 1-based on the non-increasing sort given by `order`."""
    model_config = ConfigDict(frozen=True)

    graphic: bool
    failing_k: Optional[int] = None
    order: Tuple[int, ...]

    def to_json_dict(self) -> Dict[str, Any]:
        return {"graphic": self.graphic, "failing_k": self.failing_k, "order": list(self.order)}


def _normalize_edge(pair: Iterable[int]) -> Edge:
    u, v = (int(x) for x in pair)
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class LabeledGraph(BaseModel):
    """A simple graph on vertices 0..n-1; edges are stored as (i, j) with i < j."""
    model_config = ConfigDict(frozen=True)

    n: int
    edges: FrozenSet[Edge] = frozenset()

    @field_validator("n")
    @classmethod
    def _positive_order(cls, value: int) -> int:
        if value < 1:
            raise ValueError("a graph needs at least one vertex")
        return value

    @field_validator("edges", mode="before")
    @classmethod
    def _normalize_edges(cls, value: Any) -> FrozenSet[Edge]:
        seen: Set[Edge] = set()
        for pair in value:
            edge = _normalize_edge(pair)
            if edge in seen:
                raise ValueError(f"duplicate edge {list(edge)}")
            seen.add(edge)
        return frozenset(seen)

    @model_validator(mode="after")
    def _edges_in_range(self) -> "LabeledGraph":
        for u, v in self.edges:
            if u < 0 or v >= self.n:
                raise ValueError(f"edge {[u, v]} out of range for n={self.n}")
        return self

    @classmethod
    def trusted(cls, n: int, edges: Iterable[Edge]) -> "LabeledGraph":
        """Builds a graph from edges already in canonical (i < j) form, skipping validation."""
        return cls.model_construct(n=n, edges=frozenset(edges))

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def adjacency(self) -> List[Set[int]]:
        adjacency: List[Set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return adjacency

    def degrees(self) -> Tuple[int, ...]:
        counts = [0] * self.n
        for u, v in self.edges:
            counts[u] += 1
            counts[v] += 1
        return tuple(counts)

    def edge_list(self) -> List[Edge]:
        return sorted(self.edges)

    def to_json_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edge_list()]}
