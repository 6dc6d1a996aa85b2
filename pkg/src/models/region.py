from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.errors import InvalidRegion
from src.models.sequence import DegreeSequence


class SimpleRegion(BaseModel):
    """The region D(n, sigma, c1, c2): length-n sequences summing to sigma with entries in [c2, c1].

    Construction does not enforce the region invariants; services check them and raise InvalidRegion.
    """
    model_config = ConfigDict(frozen=True)

    n: int
    sigma: int
    c1: int
    c2: int

    @classmethod
    def parse(cls, text: str) -> "SimpleRegion":
        """Parses the `n,sigma,c1,c2` form used on the command line."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected n,sigma,c1,c2, got {text!r}")
        n, sigma, c1, c2 = (int(p) for p in parts)
        return cls(n=n, sigma=sigma, c1=c1, c2=c2)

    def check(self) -> "SimpleRegion":
        """Raises InvalidRegion unless n > c1 >= c2 >= 0, sigma is even and n*c2 <= sigma <= n*c1."""
        if self.n < 1:
            raise InvalidRegion(f"region {self}: n must be positive")
        if not self.n > self.c1 >= self.c2 >= 0:
            raise InvalidRegion(f"region {self}: need n > c1 >= c2 >= 0")
        if self.sigma % 2:
            raise InvalidRegion(f"region {self}: sigma must be even")
        if not self.n * self.c2 <= self.sigma <= self.n * self.c1:
            raise InvalidRegion(f"region {self}: sigma outside [n*c2, n*c1]")
        return self

    def contains(self, d: DegreeSequence) -> bool:
        return (
            d.n == self.n
            and d.total == self.sigma
            and all(self.c2 <= x <= self.c1 for x in d.degrees)
        )

    def __str__(self) -> str:
        return f"{self.n},{self.sigma},{self.c1},{self.c2}"


class RegionClassification(BaseModel):
    model_config = ConfigDict(frozen=True)

    region: SimpleRegion
    fully_graphic: bool
    q_value: int
    instability_window: Optional[Tuple[int, int]]
    window_status: str
    p1: bool
    p2: bool
    p3: bool
    p4_applicable: bool = False
    gs_plus: Optional[bool] = None
    epsilon: Optional[str] = None
    leg: DegreeSequence
    alpha_floor: int
    a_value: int

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "region": [self.region.n, self.region.sigma, self.region.c1, self.region.c2],
            "fully_graphic": self.fully_graphic,
            "q": self.q_value,
            "window": list(self.instability_window) if self.instability_window else None,
            "window_status": self.window_status,
            "p1": self.p1,
            "p2": self.p2,
            "p3": self.p3,
            "p4": "not region-level",
            "gs_plus": self.gs_plus,
            "epsilon": self.epsilon,
            "leg": self.leg.to_list(),
            "alpha_floor": self.alpha_floor,
            "a": self.a_value,
        }
