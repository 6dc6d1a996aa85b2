from fractions import Fraction
from typing import Any, Dict, Literal, Tuple

from pydantic import BaseModel, ConfigDict

Convention = Literal["i_le_j", "i_lt_j"]


class BoundaryReport(BaseModel):
    """Exact boundary quotient of a graphic sequence; `terms` is keyed by the perturbed index pair."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    quotient: Fraction
    convention: Convention
    terms: Dict[Tuple[int, int], int]
    base_count: int

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "quotient": f"{float(self.quotient):.12g}",
            "numerator": str(self.quotient.numerator),
            "denominator": str(self.quotient.denominator),
            "convention": self.convention,
            "base_count": str(self.base_count),
            "terms": [
                {"i": i, "j": j, "count": str(count)}
                for (i, j), count in sorted(self.terms.items())
            ],
        }
