import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.errors import InternalInvariantFailure, InvalidTrail, NotAPartition, PreconditionViolated
from src.models.sequence import LabeledGraph, Perturbation
from src.models.trail import AlternatingTrail, HostileConfiguration, Verdict
from src.services.graphicality import graph_degrees, perturb

logger = logging.getLogger(__name__)

State = Tuple[int, bool]


def _pair(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def validate_trail(g: LabeledGraph, t: AlternatingTrail) -> None:
    """Raises InvalidTrail at the first pair that breaks alternation, repeats or leaves the graph."""
    used: Set[Tuple[int, int]] = set()
    for position, u, v in t.pairs():
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise InvalidTrail("vertex out of range", position)
        if u == v:
            raise InvalidTrail("consecutive vertices coincide", position)
        pair = _pair(u, v)
        if pair in used:
            raise InvalidTrail(f"pair {list(pair)} repeats", position)
        used.add(pair)
        if g.has_edge(u, v) != t.is_edge_position(position):
            expected = "an edge" if t.is_edge_position(position) else "a non-edge"
            raise InvalidTrail(f"pair {list(pair)} should be {expected}", position)


def flip_along_trail(g: LabeledGraph, t: AlternatingTrail) -> LabeledGraph:
    validate_trail(g, t)
    edges = set(g.edges)
    for position, u, v in t.pairs():
        pair = _pair(u, v)
        if t.is_edge_position(position):
            edges.discard(pair)
        else:
            edges.add(pair)
    return LabeledGraph.trusted(g.n, edges)


def _distances(
    adjacency: List[Set[int]],
    allowed: List[int],
    target: int,
    finish_flag: bool,
) -> Dict[State, int]:
    """Alternating-walk distance from every (vertex, next pair must be an edge) state to the finish state."""
    allowed_set = set(allowed)
    dist: Dict[State, int] = {(target, finish_flag): 0}
    queue = deque([(target, finish_flag)])
    while queue:
        w, flag = queue.popleft()
        # arrived at w with `flag`, so the previous pair had type (not flag) == edge
        came_by_edge = not flag
        for u in allowed:
            if u == w:
                continue
            if (w in adjacency[u]) != came_by_edge:
                continue
            state = (u, came_by_edge)
            if state not in dist:
                dist[state] = dist[(w, flag)] + 1
                queue.append(state)
    return dist


def _search(
    g: LabeledGraph,
    start: int,
    end: int,
    max_len: int,
    starts_with_edge: bool,
    allowed: Optional[Iterable[int]] = None,
) -> Optional[AlternatingTrail]:
    vertices = sorted(set(allowed)) if allowed is not None else list(range(g.n))
    if start not in vertices or end not in vertices or max_len < 1:
        return None
    adjacency = g.adjacency()
    finish_flag = not starts_with_edge
    dist = _distances(adjacency, vertices, end, finish_flag)

    path = [start]
    used: Set[Tuple[int, int]] = set()

    def dfs(v: int, need_edge: bool) -> bool:
        length = len(path) - 1
        if length >= 1 and length % 2 == 1 and v == end:
            return True
        for w in vertices:
            if w == v or (w in adjacency[v]) != need_edge:
                continue
            pair = _pair(v, w)
            if pair in used:
                continue
            remaining = dist.get((w, not need_edge))
            if remaining is None or length + 1 + remaining > max_len:
                continue
            used.add(pair)
            path.append(w)
            if dfs(w, not need_edge):
                return True
            path.pop()
            used.discard(pair)
        return False

    if (start, starts_with_edge) not in dist or dist[(start, starts_with_edge)] > max_len:
        return None
    if dfs(start, starts_with_edge):
        return AlternatingTrail(vertices=tuple(path), starts_with_edge=starts_with_edge)
    return None


def find_witness_trail(g: LabeledGraph, p: int, q: int, max_len: int = 11) -> Optional[AlternatingTrail]:
    """
    Lexicographically least edge-abundant alternating trail from p to q of odd length <= max_len.
    """
    if max_len < 1 or max_len % 2 == 0:
        raise ValueError(f"max_len must be odd and positive, got {max_len}")
    trail = _search(g, p, q, max_len, starts_with_edge=True)
    logger.debug(f"witness search p={p} q={q} max_len={max_len}: {trail.vertices if trail else None}")
    return trail


def find_pre_witness_trail(
    g: LabeledGraph,
    a: int,
    b: int,
    allowed: Iterable[int],
    max_len: int = 5,
) -> Optional[AlternatingTrail]:
    """Lexicographically least edge-deficient alternating trail from a to b inside `allowed`."""
    return _search(g, a, b, max_len, starts_with_edge=False, allowed=allowed)


def symmetric_difference_trail(h0: LabeledGraph, h1: LabeledGraph, p: int, q: int) -> AlternatingTrail:
    """
    Greedy maximal alternating walk in E(h0) ^ E(h1) from q, starting with an edge of h1 only.

    When deg(h1) = deg(h0) + 1^{+p,+q} the walk can only get stuck at p after an h1 edge, so the
    result is an edge-abundant trail in h1 from q to p.
    """
    if h0.n != h1.n or graph_degrees(h1) != perturb(graph_degrees(h0), Perturbation.plus(p, q)):
        raise PreconditionViolated(f"degrees of h1 are not degrees of h0 plus 1 at ({p}, {q})")

    plus: Dict[int, Set[int]] = {v: set() for v in range(h0.n)}
    minus: Dict[int, Set[int]] = {v: set() for v in range(h0.n)}
    for u, v in h1.edges - h0.edges:
        plus[u].add(v)
        plus[v].add(u)
    for u, v in h0.edges - h1.edges:
        minus[u].add(v)
        minus[v].add(u)

    walk = [q]
    take_plus = True
    while True:
        pool = plus if take_plus else minus
        v = walk[-1]
        if not pool[v]:
            break
        w = min(pool[v])
        pool[v].discard(w)
        pool[w].discard(v)
        walk.append(w)
        take_plus = not take_plus

    if len(walk) < 2 or walk[-1] != p or (len(walk) - 1) % 2 == 0:
        raise InternalInvariantFailure(f"symmetric difference walk {walk} does not end at {p} after an edge")
    return AlternatingTrail(vertices=tuple(walk), starts_with_edge=True)


def check_partition(n: int, blocks: Iterable[FrozenSet[int]]) -> None:
    seen: Set[int] = set()
    for block in blocks:
        for v in block:
            if not 0 <= v < n:
                raise NotAPartition(f"vertex {v} out of range for n={n}")
            if v in seen:
                raise NotAPartition(f"vertex {v} appears in two blocks")
            seen.add(v)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise NotAPartition(f"vertices {missing} are in no block")


def verify_hostile(g: LabeledGraph, h: HostileConfiguration) -> Verdict:
    """Checks conditions (a) to (e) of a hostile configuration and reports the first that fails."""
    check_partition(g.n, [h.s, h.k_prime, h.y_prime, h.r_prime])
    adjacency = g.adjacency()
    k, y, r = sorted(h.k_prime), sorted(h.y_prime), sorted(h.r_prime)

    if any(v not in adjacency[u] for i, u in enumerate(k) for v in k[i + 1:]):
        return Verdict.failed("a")
    if any(v not in adjacency[u] for u in k for v in r):
        return Verdict.failed("b")
    if any(v in adjacency[u] for i, u in enumerate(y) for v in y[i + 1:]):
        return Verdict.failed("c")
    if any(v in adjacency[u] for u in y for v in r):
        return Verdict.failed("d")
    if not (adjacency[h.p] | adjacency[h.q]) <= h.k_prime:
        return Verdict.failed("e")
    return Verdict.passed()
