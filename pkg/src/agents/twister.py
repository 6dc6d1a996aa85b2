import logging
from typing import Optional

from src.errors import GraphicRegionsError, InconclusiveSearch, InternalInvariantFailure
from src.models.certificate import HostileCertificate, RefinedRPartition
from src.models.sequence import LabeledGraph, Perturbation
from src.services.constructive_service import (
    jms_partition,
    refine_r,
    run_case1,
    run_case2,
    validate_structure,
)
from src.services.graphicality import graph_degrees, perturb

logger = logging.getLogger(__name__)


class TwisterAgent:
    """
    Turns a graph without a short witness trail into a hostile configuration.

    With `strict` the caller has ruled out 11-witness trails, so every structural fact the construction
    relies on must hold; a failure is then a bug rather than a too-short search.
    """

    def __init__(self, strict: bool = True):
        self.strict = strict

    def construct(self, g: LabeledGraph, p: int, q: int) -> HostileCertificate:
        part = jms_partition(g, p, q)
        verdict = validate_structure(g, part, level="full" if self.strict else "basic")
        if not verdict.ok:
            raise self._failure(f"structure check '{verdict.violated}' failed without a witness trail")

        refined = refine_r(g, part)
        case_two = self._case_two_vertex(g, refined)
        if case_two is None:
            if self._r_n_has_edge(g, refined):
                raise self._failure("R_N has an edge outside every single R_i block")
            final, trace = run_case1(g, part, refined)
        else:
            final, trace = run_case2(g, part, refined, case_two)

        d_pp = perturb(graph_degrees(final), Perturbation.minus(p, q))
        logger.info(f"hostile configuration (case {trace.case_tag}) with D'' = {d_pp}")
        return HostileCertificate(config=trace.partition, final_graph=final, d_pp=d_pp, trace=trace)

    @staticmethod
    def _r_n_has_edge(g: LabeledGraph, refined: RefinedRPartition) -> bool:
        rn = refined.r_n
        return any(g.has_edge(u, v) for u in rn for v in rn if u < v)

    @staticmethod
    def _case_two_vertex(g: LabeledGraph, refined: RefinedRPartition) -> Optional[int]:
        for i, block in sorted(refined.ri.items()):
            if any(g.has_edge(u, v) for u in block for v in block if u < v):
                return i
        return None

    def _failure(self, message: str) -> GraphicRegionsError:
        if self.strict:
            return InternalInvariantFailure(message)
        return InconclusiveSearch(message)
