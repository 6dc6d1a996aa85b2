from typing import Any, Dict, FrozenSet, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from src.models.sequence import DegreeSequence, LabeledGraph
from src.models.trail import AlternatingTrail, HostileConfiguration

Phase = Literal["down1", "uplift", "down2"]


class JmsPartition(BaseModel):
    """S, X, Y, Z, R and K = X | Z for a pair p, q with equal neighbourhoods."""
    model_config = ConfigDict(frozen=True)

    p: int
    q: int
    s: FrozenSet[int]
    x: FrozenSet[int]
    y: FrozenSet[int]
    z: FrozenSet[int]
    r: FrozenSet[int]

    @property
    def k(self) -> FrozenSet[int]:
        return self.x | self.z

    def to_json_dict(self) -> Dict[str, Any]:
        return {name: sorted(getattr(self, name)) for name in ("s", "x", "y", "z", "r", "k")}


class RefinedRPartition(BaseModel):
    """R split by the K-vertices each member misses: none (r0), exactly v_i (ri[i]) or at least two (r_inf)."""
    model_config = ConfigDict(frozen=True)

    r0: FrozenSet[int]
    ri: Dict[int, FrozenSet[int]]
    r_inf: FrozenSet[int]

    @property
    def r_n(self) -> FrozenSet[int]:
        union = set(self.r_inf)
        for block in self.ri.values():
            union |= block
        return frozenset(union)


class TwistStep(BaseModel):
    """hinge_flip(x, y, z): edge x-y replaced by x-z."""
    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    z: int
    phase: Phase


class SpanningTree(BaseModel):
    model_config = ConfigDict(frozen=True)

    root: int
    edges: Tuple[Tuple[int, int], ...]


class CaseTwoState(BaseModel):
    model_config = ConfigDict(frozen=True)

    i: int
    r_i0: FrozenSet[int]
    r_i1: FrozenSet[int]
    r0_star: FrozenSet[int]
    rn_star: FrozenSet[int]
    r_k: FrozenSet[int]
    trees: Tuple[SpanningTree, ...]


class TwistTrace(BaseModel):
    model_config = ConfigDict(frozen=True)

    case_tag: Literal["I", "II"]
    steps: Tuple[TwistStep, ...] = ()
    partition: HostileConfiguration
    case2_state: Optional[CaseTwoState] = None

    def to_json_list(self) -> List[Dict[str, Any]]:
        return [{"x": s.x, "y": s.y, "z": s.z, "phase": s.phase} for s in self.steps]


class WitnessCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["witness"] = "witness"
    trail: AlternatingTrail

    def to_json_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "trail": self.trail.to_json_dict()}


class HostileCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["hostile"] = "hostile"
    config: HostileConfiguration
    final_graph: LabeledGraph
    d_pp: DegreeSequence
    trace: TwistTrace

    def to_json_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "kind": self.kind,
            "case": self.trace.case_tag,
            "partition": self.config.to_json_dict(),
            "d_pp": self.d_pp.to_list(),
            "final_graph": self.final_graph.to_json_dict(),
            "trace": self.trace.to_json_list(),
        }
        state = self.trace.case2_state
        if state is not None:
            payload["case2"] = {
                "i": state.i,
                "r_i0": sorted(state.r_i0),
                "r_i1": sorted(state.r_i1),
                "r0_star": sorted(state.r0_star),
                "rn_star": sorted(state.rn_star),
                "r_k": sorted(state.r_k),
                "trees": [{"root": t.root, "edges": [list(e) for e in t.edges]} for t in state.trees],
            }
        return payload


Certificate = Union[WitnessCertificate, HostileCertificate]


class Reduction(BaseModel):
    """Result of the length-two flip that makes the neighbourhoods of i and j comparable.

    `direction` is "i_to_j" when the edge i-m moved to j-m; `center` is the vertex whose degree grew by two.
    """
    model_config = ConfigDict(frozen=True)

    graph: LabeledGraph
    m: int
    direction: Literal["i_to_j", "j_to_i"]
    center: int


class DescentRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    reduction: Optional[Reduction] = None
    trail: AlternatingTrail
    result: LabeledGraph

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "i": self.i,
            "j": self.j,
            "reduction": None if self.reduction is None else {
                "m": self.reduction.m,
                "direction": self.reduction.direction,
                "center": self.reduction.center,
            },
            "trail": self.trail.to_json_dict(),
            "result": self.result.to_json_dict(),
        }
