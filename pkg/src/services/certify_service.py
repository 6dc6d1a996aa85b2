import logging

from src.errors import (
    InconclusiveSearch,
    InternalInvariantFailure,
    NeighborhoodsDiffer,
    NotGraphic,
    PreconditionViolated,
    Underflow,
)
from src.graph.workflow import CertifyWorkflow
from src.models.certificate import Certificate, DescentRecord, HostileCertificate
from src.models.region import SimpleRegion
from src.models.sequence import DegreeSequence, LabeledGraph, Perturbation
from src.models.trail import AlternatingTrail
from src.services.constructive_service import reduce_unequal_neighborhoods
from src.services.graphicality import graph_degrees, graphic, perturb
from src.services.trail_service import flip_along_trail, verify_hostile

logger = logging.getLogger(__name__)


def base_sequence(g: LabeledGraph, p: int, q: int) -> DegreeSequence:
    """graph_degrees(g) - 1^{+p,+q}."""
    if not (0 <= p < g.n and 0 <= q < g.n):
        raise PreconditionViolated(f"vertices ({p}, {q}) out of range for n={g.n}")
    try:
        return perturb(graph_degrees(g), Perturbation.minus(p, q))
    except Underflow as e:
        raise PreconditionViolated(str(e)) from e


def certify(g: LabeledGraph, p: int, q: int, region: SimpleRegion, max_len: int = 11) -> Certificate:
    """
    Either a witness trail between p and q, or a hostile configuration proving that some member of the
    region is not graphic.

    :param g: realization of d + 1^{+p,+q} for some d in `region`, with N(p) == N(q).
    :param max_len: odd bound on the trail length; below 11 a failed check is reported as InconclusiveSearch.
    """
    region.check()
    d = base_sequence(g, p, q)
    if not region.contains(d):
        raise PreconditionViolated(f"{d} is not a member of region {region}")
    adjacency = g.adjacency()
    if adjacency[p] != adjacency[q]:
        raise NeighborhoodsDiffer(f"N({p}) and N({q}) differ")

    certificate = CertifyWorkflow(max_len).run(g, p, q)
    if isinstance(certificate, HostileCertificate):
        _check_hostile(certificate, g, region, max_len)
    return certificate


def _check_hostile(certificate: HostileCertificate, g: LabeledGraph, region: SimpleRegion, max_len: int) -> None:
    failure = InternalInvariantFailure if max_len >= 11 else InconclusiveSearch
    verdict = verify_hostile(certificate.final_graph, certificate.config)
    if not verdict.ok:
        raise failure(f"hostile condition ({verdict.violated}) fails on the constructed graph")
    if len(certificate.final_graph.edges) != len(g.edges):
        raise failure("twists changed the number of edges")
    if not region.contains(certificate.d_pp):
        raise failure(f"D'' = {certificate.d_pp} left region {region}")
    if graphic(certificate.d_pp):
        raise failure(f"D'' = {certificate.d_pp} is graphic")


def descend(g: LabeledGraph, i: int, j: int, region: SimpleRegion, max_len: int = 11) -> DescentRecord:
    """
    Maps a realization of d + 1^{+i,+j} to a realization of d by flipping one witness trail,
    after a length-two reduction when N(i) and N(j) differ.
    """
    adjacency = g.adjacency()
    if i != j and j in adjacency[i] and adjacency[i] - {j} == adjacency[j] - {i}:
        trail = AlternatingTrail(vertices=(i, j), starts_with_edge=True)
        return DescentRecord(i=i, j=j, trail=trail, result=flip_along_trail(g, trail))

    reduction = None
    work, p, q = g, i, j
    if adjacency[i] != adjacency[j]:
        reduction = reduce_unequal_neighborhoods(g, i, j)
        work, p, q = reduction.graph, reduction.center, reduction.center

    certificate = certify(work, p, q, region, max_len)
    if isinstance(certificate, HostileCertificate):
        raise NotGraphic(f"region {region} holds the non-graphic member {certificate.d_pp}")
    result = flip_along_trail(work, certificate.trail)
    logger.info(f"descend ({i}, {j}): trail of length {certificate.trail.length}")
    return DescentRecord(i=i, j=j, reduction=reduction, trail=certificate.trail, result=result)
