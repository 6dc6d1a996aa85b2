from typing import Any, Dict, FrozenSet, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator


class AlternatingTrail(BaseModel):
    """A walk v_0..v_L alternating between edges and non-edges of a reference graph.

    Pair t is an edge exactly when (t is even) == starts_with_edge. Vertices may repeat, pairs may not.
    """
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]
    starts_with_edge: bool = True

    @field_validator("vertices")
    @classmethod
    def _at_least_one_pair(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(value) < 2:
            raise ValueError("a trail has at least one pair")
        return value

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def pairs(self):
        for t in range(self.length):
            yield t, self.vertices[t], self.vertices[t + 1]

    def is_edge_position(self, t: int) -> bool:
        return (t % 2 == 0) == self.starts_with_edge

    def to_json_dict(self) -> Dict[str, Any]:
        return {"vertices": list(self.vertices), "starts_with_edge": self.starts_with_edge}


class Verdict(BaseModel):
    """Outcome of a structural check: `violated` names the first failing condition."""
    model_config = ConfigDict(frozen=True)

    ok: bool
    violated: Optional[str] = None

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(ok=True)

    @classmethod
    def failed(cls, tag: str) -> "Verdict":
        return cls(ok=False, violated=tag)


class HostileConfiguration(BaseModel):
    """A partition S, K', Y', R' of the vertex set; S is {p, q} (a singleton when p == q)."""
    model_config = ConfigDict(frozen=True)

    p: int
    q: int
    k_prime: FrozenSet[int] = frozenset()
    y_prime: FrozenSet[int] = frozenset()
    r_prime: FrozenSet[int] = frozenset()

    @property
    def s(self) -> FrozenSet[int]:
        return frozenset((self.p, self.q))

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "S": sorted(self.s),
            "K": sorted(self.k_prime),
            "Y": sorted(self.y_prime),
            "R": sorted(self.r_prime),
        }
