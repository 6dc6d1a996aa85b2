import logging
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Set, Tuple

import networkx as nx

from src.errors import (
    AlreadyAnEdge,
    CaseMismatch,
    DegenerateVertices,
    InternalInvariantFailure,
    NeighborhoodsDiffer,
    NeighborhoodsEqual,
    NotAnEdge,
)
from src.models.certificate import (
    CaseTwoState,
    JmsPartition,
    Phase,
    Reduction,
    RefinedRPartition,
    SpanningTree,
    TwistStep,
    TwistTrace,
)
from src.models.sequence import LabeledGraph
from src.models.trail import HostileConfiguration, Verdict
from src.services.trail_service import find_pre_witness_trail

logger = logging.getLogger(__name__)

Level = Literal["basic", "full"]


def jms_partition(g: LabeledGraph, p: int, q: int) -> JmsPartition:
    """
    S = {p, q}, X = N(p) = N(q), Y = vertices missing at least two of X, Z = N(Y) outside X, R = the rest.
    """
    adjacency = g.adjacency()
    if adjacency[p] != adjacency[q]:
        raise NeighborhoodsDiffer(f"N({p}) = {sorted(adjacency[p])} differs from N({q}) = {sorted(adjacency[q])}")

    s = {p, q}
    x = set(adjacency[p])
    y = {v for v in range(g.n) if v not in s and v not in x and len(x - adjacency[v]) >= 2}
    z: Set[int] = set()
    for v in y:
        z |= adjacency[v]
    z -= x | y | s
    r = set(range(g.n)) - s - x - y - z
    return JmsPartition(
        p=p,
        q=q,
        s=frozenset(s),
        x=frozenset(x),
        y=frozenset(y),
        z=frozenset(z),
        r=frozenset(r),
    )


def refine_r(g: LabeledGraph, part: JmsPartition) -> RefinedRPartition:
    adjacency = g.adjacency()
    k = part.k
    r0: Set[int] = set()
    ri: Dict[int, Set[int]] = {}
    r_inf: Set[int] = set()
    for r in part.r:
        missing = k - adjacency[r]
        if not missing:
            r0.add(r)
        elif len(missing) == 1:
            ri.setdefault(next(iter(missing)), set()).add(r)
        else:
            r_inf.add(r)
    return RefinedRPartition(
        r0=frozenset(r0),
        ri={i: frozenset(block) for i, block in sorted(ri.items())},
        r_inf=frozenset(r_inf),
    )


def _has_internal_edge(adjacency: List[Set[int]], block: Iterable[int]) -> bool:
    members = set(block)
    return any(adjacency[u] & members for u in members)


def _has_cross_edge(adjacency: List[Set[int]], a: Iterable[int], b: Iterable[int]) -> bool:
    other = set(b)
    return any(adjacency[u] & other for u in a)


def validate_structure(g: LabeledGraph, part: JmsPartition, level: Level = "full") -> Verdict:
    """
    Checks the structure forced by the absence of short witness trails and reports the first failure.

    "basic" covers conditions i to v (no 7-witness trail); "full" adds the refined-R conditions
    (no 11-witness trail).
    """
    adjacency = g.adjacency()
    k = sorted(part.k)

    if part.p != part.q and part.q in adjacency[part.p]:
        return Verdict.failed("i")
    if _has_internal_edge(adjacency, part.y):
        return Verdict.failed("ii")
    if any(b not in adjacency[a] for idx, a in enumerate(k) for b in k[idx + 1:]):
        return Verdict.failed("iii")
    if _has_cross_edge(adjacency, part.y, part.r):
        return Verdict.failed("iv")
    if any(len(part.x - adjacency[r]) > 1 for r in part.r):
        return Verdict.failed("v")
    if level == "basic":
        return Verdict.passed()

    refined = refine_r(g, part)
    inside = part.k | part.r
    for idx, a in enumerate(k):
        for b in k[idx + 1:]:
            if find_pre_witness_trail(g, a, b, inside) is not None:
                return Verdict.failed("pre_witness")
    for w in k:
        if len(adjacency[w] & part.y) >= 2 and find_pre_witness_trail(g, w, w, inside) is not None:
            return Verdict.failed("pre_witness")

    if _has_internal_edge(adjacency, refined.r_inf):
        return Verdict.failed("r_inf_edge")
    blocks = [block for _, block in sorted(refined.ri.items())] + [refined.r_inf]
    for idx, a in enumerate(blocks):
        for b in blocks[idx + 1:]:
            if _has_cross_edge(adjacency, a, b):
                return Verdict.failed("r_cross_edge")

    edged = [i for i, block in sorted(refined.ri.items()) if _has_internal_edge(adjacency, block)]
    for i in edged:
        if len(adjacency[i] & part.y) > 1:
            return Verdict.failed("gamma_y")
        if any(block for j, block in refined.ri.items() if j != i):
            return Verdict.failed("r_block")
    return Verdict.passed()


def hinge_flip(g: LabeledGraph, x: int, y: int, z: int) -> LabeledGraph:
    """Replaces the edge x-y by the edge x-z."""
    if len({x, y, z}) < 3:
        raise DegenerateVertices(f"hinge flip needs distinct vertices, got ({x}, {y}, {z})")
    if not g.has_edge(x, y):
        raise NotAnEdge(f"({x}, {y}) is not an edge")
    if g.has_edge(x, z):
        raise AlreadyAnEdge(f"({x}, {z}) is already an edge")
    edges = set(g.edges)
    edges.discard((min(x, y), max(x, y)))
    edges.add((min(x, z), max(x, z)))
    return LabeledGraph.trusted(g.n, edges)


class _Workspace:
    """Mutable adjacency used while a twist schedule runs."""

    def __init__(self, g: LabeledGraph):
        self.n = g.n
        self.adjacency = g.adjacency()
        self.steps: List[TwistStep] = []

    def flip(self, x: int, y: int, z: int, phase: Phase) -> None:
        self.adjacency[x].discard(y)
        self.adjacency[y].discard(x)
        self.adjacency[x].add(z)
        self.adjacency[z].add(x)
        self.steps.append(TwistStep(x=x, y=y, z=z, phase=phase))
        logger.debug(f"{phase} twist ({x},{y}) => ({x},{z})")

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def graph(self) -> LabeledGraph:
        edges = [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]
        return LabeledGraph.trusted(self.n, edges)


def _downward_twists(work: _Workspace, r0: FrozenSet[int], rn: FrozenSet[int], phase: Phase) -> None:
    budget = work.edge_count()
    low, high = sorted(r0), sorted(rn)
    taken = 0
    while True:
        move = _least_twist(work.adjacency, low, high)
        if move is None:
            return
        taken += 1
        if taken > budget:
            raise InternalInvariantFailure(f"twist loop exceeded {budget} steps")
        work.flip(*move, phase=phase)


def _least_twist(adjacency: List[Set[int]], low: List[int], high: List[int]) -> Optional[Tuple[int, int, int]]:
    for x in low:
        for y in high:
            if y not in adjacency[x]:
                continue
            for z in low:
                if z != x and z not in adjacency[x]:
                    return x, y, z
    return None


def run_case1(
    g: LabeledGraph,
    part: JmsPartition,
    refined: RefinedRPartition,
) -> Tuple[LabeledGraph, TwistTrace]:
    """Downward twists from R_N into R_0 until none applies, then the hostile partition."""
    rn = refined.r_n
    if _has_internal_edge(g.adjacency(), rn):
        raise CaseMismatch("R_N contains an edge; case I does not apply")

    work = _Workspace(g)
    _downward_twists(work, refined.r0, rn, "down1")
    r00 = frozenset(r for r in refined.r0 if work.adjacency[r] & rn)
    config = HostileConfiguration(
        p=part.p,
        q=part.q,
        k_prime=part.k | r00,
        y_prime=part.y | rn,
        r_prime=refined.r0 - r00,
    )
    logger.info(f"case I finished after {len(work.steps)} twists")
    return work.graph(), TwistTrace(case_tag="I", steps=tuple(work.steps), partition=config)


def spanning_forest(g: LabeledGraph, block: Iterable[int]) -> List[SpanningTree]:
    """Breadth-first spanning trees of g[block], one per component, rooted at the least vertex."""
    members = sorted(set(block))
    member_set = set(members)
    sub = nx.Graph()
    sub.add_nodes_from(members)
    sub.add_edges_from(e for e in g.edge_list() if e[0] in member_set and e[1] in member_set)
    trees = []
    for component in sorted(nx.connected_components(sub), key=min):
        root = min(component)
        trees.append(SpanningTree(root=root, edges=tuple(nx.bfs_edges(sub, root))))
    return trees


def run_case2(
    g: LabeledGraph,
    part: JmsPartition,
    refined: RefinedRPartition,
    i: int,
) -> Tuple[LabeledGraph, TwistTrace]:
    """
    Uplift every spanning-tree edge of g[R_i] onto v_i, then run downward twists on (R_0*, R_N*).

    :param i: the K-vertex whose R-block carries edges.
    """
    r_i = refined.ri.get(i, frozenset())
    if not _has_internal_edge(g.adjacency(), r_i):
        raise CaseMismatch(f"R_{i} has no edge; case II does not apply")

    work = _Workspace(g)
    trees = spanning_forest(g, r_i)
    for tree in trees:
        for parent, child in tree.edges:
            work.flip(child, parent, i, phase="uplift")

    r_i1 = frozenset(tree.root for tree in trees)
    r_i0 = r_i - r_i1
    r0_star = refined.r0 | r_i0
    rn_star = refined.r_inf | r_i1
    _downward_twists(work, r0_star, rn_star, "down2")

    touching: Set[int] = set()
    for v in rn_star:
        touching |= work.adjacency[v]
    r_k = frozenset(touching & r0_star)
    config = HostileConfiguration(
        p=part.p,
        q=part.q,
        k_prime=part.k | r_k,
        y_prime=part.y | rn_star,
        r_prime=r0_star - r_k,
    )
    state = CaseTwoState(
        i=i,
        r_i0=r_i0,
        r_i1=r_i1,
        r0_star=r0_star,
        rn_star=rn_star,
        r_k=r_k,
        trees=tuple(trees),
    )
    logger.info(f"case II at v_{i}: {len(work.steps)} hinge flips over {len(trees)} components")
    return work.graph(), TwistTrace(case_tag="II", steps=tuple(work.steps), partition=config, case2_state=state)


def replay_trace(g: LabeledGraph, trace: TwistTrace) -> LabeledGraph:
    for step in trace.steps:
        g = hinge_flip(g, step.x, step.y, step.z)
    return g


def reduce_unequal_neighborhoods(g: LabeledGraph, i: int, j: int) -> Reduction:
    """
    Flips the length-two alternating trail i - m ... j (or j - m ... i) with the least m.

    The result realizes d + 1^{+c,+c} where c is the returned `center`, if g realized d + 1^{+i,+j}.
    """
    adjacency = g.adjacency()
    for source, target, direction in ((i, j, "i_to_j"), (j, i, "j_to_i")):
        for m in sorted(adjacency[source]):
            if m != target and m not in adjacency[target]:
                edges = set(g.edges)
                edges.discard((min(source, m), max(source, m)))
                edges.add((min(target, m), max(target, m)))
                return Reduction(
                    graph=LabeledGraph.trusted(g.n, edges),
                    m=m,
                    direction=direction,
                    center=target,
                )
    raise NeighborhoodsEqual(f"N({i}) and N({j}) agree outside {{{i}, {j}}}")


def undo_reduction(reduction: Reduction, i: int, j: int) -> LabeledGraph:
    source, target = (i, j) if reduction.direction == "i_to_j" else (j, i)
    g = reduction.graph
    m = reduction.m
    edges = set(g.edges)
    edges.discard((min(target, m), max(target, m)))
    edges.add((min(source, m), max(source, m)))
    return LabeledGraph.trusted(g.n, edges)
