import hashlib
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set

import numpy as np

from src.config import get_settings
from src.errors import InternalInvariantFailure, NotGraphic, TooFewEdges
from src.models.chain import ChainState, MixingReport
from src.models.sequence import DegreeSequence, Edge, LabeledGraph
from src.services.counting_service import enumerate_realizations
from src.services.graphicality import graphic, havel_hakimi

logger = logging.getLogger(__name__)

READABLE_KEY_MAX_N = 8


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _restore_generator(rng_state: Dict) -> np.random.Generator:
    bit_generator = np.random.PCG64()
    bit_generator.state = rng_state
    return np.random.Generator(bit_generator)


def state_key(n: int, edges) -> str:
    """Canonical encoding of a realization: readable up to n = 8, a blake2b digest above."""
    text = ";".join(f"{u}-{v}" for u, v in sorted(edges))
    if n <= READABLE_KEY_MAX_N:
        return text
    return hashlib.blake2b(text.encode(), digest_size=16).hexdigest()


class SwitchChain:
    """
    The switch chain on realizations of a fixed degree sequence.

    A proposal picks an ordered pair of distinct edges (a, b), (c, d) and one of the two rewirings
    {(a, d), (c, b)} or {(a, c), (b, d)}. It is applied only when the four endpoints are distinct and neither
    new pair is already an edge; otherwise the chain holds.
    """

    def __init__(self, graph: LabeledGraph, rng: np.random.Generator):
        if len(graph.edges) < 2:
            raise TooFewEdges(f"the switch chain needs at least 2 edges, got {len(graph.edges)}")
        self.n = graph.n
        self.rng = rng
        self.edges: List[Edge] = graph.edge_list()
        self.adjacency: List[Set[int]] = graph.adjacency()
        self.accepted = 0
        self.rejected = 0

    def propose(self) -> bool:
        m = len(self.edges)
        first = int(self.rng.integers(m))
        second = int(self.rng.integers(m - 1))
        if second >= first:
            second += 1
        rewiring = int(self.rng.integers(2))

        a, b = self.edges[first]
        c, d = self.edges[second]
        if rewiring == 0:
            new_first, new_second = (a, d), (c, b)
        else:
            new_first, new_second = (a, c), (b, d)

        clash = new_first[1] in self.adjacency[new_first[0]] or new_second[1] in self.adjacency[new_second[0]]
        if len({a, b, c, d}) < 4 or clash:
            self.rejected += 1
            return False

        for u, v in ((a, b), (c, d)):
            self.adjacency[u].discard(v)
            self.adjacency[v].discard(u)
        for u, v in (new_first, new_second):
            self.adjacency[u].add(v)
            self.adjacency[v].add(u)
        self.edges[first] = tuple(sorted(new_first))
        self.edges[second] = tuple(sorted(new_second))
        self.accepted += 1
        return True

    def key(self) -> str:
        return state_key(self.n, self.edges)

    def graph(self) -> LabeledGraph:
        return LabeledGraph.trusted(self.n, self.edges)


def initial_state(d: DegreeSequence, seed: int) -> ChainState:
    g = havel_hakimi(d)
    return ChainState(graph=g, rng_state=make_generator(seed).bit_generator.state)


def switch_step(state: ChainState) -> ChainState:
    rng = _restore_generator(state.rng_state)
    chain = SwitchChain(state.graph, rng)
    moved = chain.propose()
    return ChainState(
        graph=chain.graph() if moved else state.graph,
        rng_state=rng.bit_generator.state,
        steps_taken=state.steps_taken + 1,
        proposals_rejected=state.proposals_rejected + (0 if moved else 1),
    )


def _tv_to_uniform(visits: Counter, total: int, realizations: List[LabeledGraph]) -> Fraction:
    keys = {state_key(g.n, g.edges) for g in realizations}
    stray = set(visits) - keys
    if stray:
        raise InternalInvariantFailure(f"chain visited {len(stray)} states outside the realization set")
    target = Fraction(1, len(keys))
    return sum((abs(Fraction(visits.get(key, 0), total) - target) for key in keys), Fraction(0)) / 2


def run_chain(
    d: DegreeSequence,
    seed: int,
    steps: int,
    thin: int = 1,
    burn_in: int = 0,
    tv_guard: Optional[int] = None,
    keep_trace: bool = False,
) -> MixingReport:
    """
    Runs burn_in + steps proposals from the Havel-Hakimi realization and records every thin-th state after burn-in.

    With fewer than two edges the realization is unique and the chain stays put.
    """
    if thin < 1 or steps < 0 or burn_in < 0:
        raise ValueError("steps and burn_in must be >= 0 and thin >= 1")
    if not graphic(d):
        raise NotGraphic(f"{d} is not graphic")
    tv_guard = tv_guard if tv_guard is not None else get_settings().tv_guard

    g = havel_hakimi(d)
    visits: Counter = Counter()
    trace: List[str] = []
    accepted = rejected = 0
    if len(g.edges) < 2:
        key = state_key(g.n, g.edges)
        samples = steps // thin
        visits[key] = samples
        trace = [key] * samples if keep_trace else []
    else:
        chain = SwitchChain(g, make_generator(seed))
        for _ in range(burn_in):
            chain.propose()
        for t in range(1, steps + 1):
            chain.propose()
            if t % thin == 0:
                if [len(neighbours) for neighbours in chain.adjacency] != list(d.degrees):
                    raise InternalInvariantFailure(f"switch chain left the realizations of {d} at step {t}")
                key = chain.key()
                visits[key] += 1
                if keep_trace:
                    trace.append(key)
        accepted, rejected = chain.accepted, chain.rejected

    total = sum(visits.values())
    realization_count = None
    tv_distance = None
    if d.n <= tv_guard:
        realizations = enumerate_realizations(d, guard=tv_guard)
        realization_count = len(realizations)
        if total:
            tv_distance = _tv_to_uniform(visits, total, realizations)
        tv_status = "exact"
    else:
        logger.warning(f"n={d.n} exceeds the exact-TV guard {tv_guard}; tv_distance skipped")
        tv_status = "skipped_too_large"

    logger.info(f"switch chain seed={seed}: {accepted} accepted, {rejected} rejected, {len(visits)} states")
    return MixingReport(
        seed=seed,
        visit_counts=dict(visits),
        total_samples=total,
        accepted=accepted,
        rejected=rejected,
        realization_count=realization_count,
        tv_distance=tv_distance,
        tv_status=tv_status,
        trace=trace,
    )


def run_chains(
    d: DegreeSequence,
    seeds: Sequence[int],
    steps: int,
    thin: int = 1,
    burn_in: int = 0,
    workers: Optional[int] = None,
) -> List[MixingReport]:
    """Independent chains, one per seed, reported in seed order."""
    workers = workers if workers is not None else get_settings().workers

    def one(seed: int) -> MixingReport:
        return run_chain(d, seed, steps, thin=thin, burn_in=burn_in)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, seeds))
    return [one(seed) for seed in seeds]
