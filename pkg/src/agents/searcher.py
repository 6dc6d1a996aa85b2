import logging
from typing import Optional

from src.models.sequence import LabeledGraph
from src.models.trail import AlternatingTrail
from src.services.trail_service import find_witness_trail

logger = logging.getLogger(__name__)


class SearcherAgent:
    """Looks for a short edge-abundant trail between the two perturbed vertices."""

    def __init__(self, max_len: int = 11):
        self.max_len = max_len

    def search(self, g: LabeledGraph, p: int, q: int) -> Optional[AlternatingTrail]:
        trail = find_witness_trail(g, p, q, self.max_len)
        if trail is not None:
            logger.info(f"witness trail of length {trail.length} between {p} and {q}")
        else:
            logger.info(f"no {self.max_len}-witness trail between {p} and {q}")
        return trail
