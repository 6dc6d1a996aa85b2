from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict

from src.models.sequence import LabeledGraph


class ChainState(BaseModel):
    """One state of the switch chain; `rng_state` is a numpy bit-generator state dictionary."""
    model_config = ConfigDict(frozen=True)

    graph: LabeledGraph
    rng_state: Dict[str, Any]
    steps_taken: int = 0
    proposals_rejected: int = 0


class MixingReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    seed: int
    visit_counts: Dict[str, int]
    total_samples: int
    accepted: int
    rejected: int
    realization_count: Optional[int] = None
    tv_distance: Optional[Fraction] = None
    tv_status: Literal["exact", "skipped_too_large"]
    trace: List[str] = []

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "total_samples": self.total_samples,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "realization_count": self.realization_count,
            "tv_status": self.tv_status,
            "tv_distance": None if self.tv_distance is None else f"{float(self.tv_distance):.12g}",
            "visit_counts": dict(sorted(self.visit_counts.items())),
        }
