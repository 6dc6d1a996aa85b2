from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.models.sequence import DegreeSequence, LabeledGraph


class SplitComposition(BaseModel):
    """Clique X, half-graph R and independent Y, laid out as X-block, R-block, Y-block."""
    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    r: int
    e: int
    graph: LabeledGraph
    degrees: DegreeSequence
    sigma: int

    @property
    def x_block(self) -> range:
        return range(0, self.x)

    @property
    def r_block(self) -> range:
        return range(self.x, self.x + self.r)

    @property
    def y_block(self) -> range:
        return range(self.x + self.r, self.x + self.r + self.y)


class EpsilonBound(BaseModel):
    """A bracket lower <= epsilon <= upper; `exact` when both discriminants are perfect squares."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: Fraction
    upper: Fraction
    exact: bool

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "lower": f"{float(self.lower):.12g}",
            "upper": f"{float(self.upper):.12g}",
            "numerator": str(self.upper.numerator),
            "denominator": str(self.upper.denominator),
            "exact": self.exact,
        }


class UnstableWindow(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    c1: int
    c2: int
    r: int
    status: str
    epsilon_status: str = "ok"
    x_min: Optional[int] = None
    x_max: Optional[int] = None
    sigma_min: Optional[int] = None
    sigma_max: Optional[int] = None
    intervals: Dict[int, Tuple[int, int]] = {}
    q: int
    q_r: int
    q_r_printed: int
    epsilon: Optional[EpsilonBound] = None
    beta: Optional[Fraction] = None
    gap_condition_holds: Optional[bool] = None
    epsilon_bound_holds: Optional[bool] = None
    epsilon_interval: Optional[Tuple[int, int]] = None

    @property
    def empty(self) -> bool:
        return self.x_min is None

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "c1": self.c1,
            "c2": self.c2,
            "r": self.r,
            "status": self.status,
            "epsilon_status": self.epsilon_status,
            "x_min": self.x_min,
            "x_max": self.x_max,
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "intervals": [{"x": x, "lo": lo, "hi": hi} for x, (lo, hi) in sorted(self.intervals.items())],
            "q": self.q,
            "q_r": self.q_r,
            "q_r_printed": self.q_r_printed,
            "epsilon": None if self.epsilon is None else self.epsilon.to_json_dict(),
            "beta": None if self.beta is None else str(self.beta),
            "eq8_holds": self.gap_condition_holds,
            "epsilon_bound_holds": self.epsilon_bound_holds,
            "sigma_interval": None if self.epsilon_interval is None else list(self.epsilon_interval),
        }
