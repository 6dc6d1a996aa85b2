import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.config import get_settings
from src.errors import NotGraphic, TooLarge
from src.models.counting import BoundaryReport, Convention
from src.models.sequence import DegreeSequence, LabeledGraph, Perturbation
from src.services.graphicality import graphic, perturb

logger = logging.getLogger(__name__)


def _obviously_empty(degrees: Sequence[int]) -> bool:
    n = len(degrees)
    return sum(degrees) % 2 == 1 or any(x > n - 1 for x in degrees)


def count_realizations(d: DegreeSequence, limit: Optional[int] = None) -> int:
    """
    Exact number of labeled simple graphs whose positional degree vector is d.

    :param d: degree sequence; entries above n-1 and odd sums give 0.
    :param limit: largest n accepted (defaults to the configured count limit).
    :return: the realization count as an int.
    """
    limit = limit if limit is not None else get_settings().count_limit
    if d.n > limit:
        raise TooLarge(f"count_realizations: n={d.n} exceeds limit {limit}")
    if _obviously_empty(d.degrees):
        return 0
    return _count_multiset(_key(d.degrees))


def _key(degrees: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted((x for x in degrees if x > 0), reverse=True))


@lru_cache(maxsize=None)
def _count_multiset(key: Tuple[int, ...]) -> int:
    # key is sorted non-increasing and holds no zeros; vertices of equal degree are interchangeable
    if not key:
        return 1
    if not graphic(key):
        return 0
    k, rest = key[0], key[1:]
    if k > len(rest):
        return 0

    groups: List[Tuple[int, int]] = []
    for value in rest:
        if groups and groups[-1][0] == value:
            groups[-1] = (value, groups[-1][1] + 1)
        else:
            groups.append((value, 1))

    total = 0
    for picks in _spread(k, [size for _, size in groups]):
        ways = 1
        residual: List[int] = []
        for (value, size), chosen in zip(groups, picks):
            ways *= comb(size, chosen)
            residual.extend([value - 1] * chosen)
            residual.extend([value] * (size - chosen))
        total += ways * _count_multiset(_key(residual))
    return total


def _spread(k: int, capacities: List[int]) -> Iterator[Tuple[int, ...]]:
    """All ways to write k as c_0 + c_1 + ... with 0 <= c_t <= capacities[t]."""
    if not capacities:
        if k == 0:
            yield ()
        return
    head, tail = capacities[0], capacities[1:]
    room = sum(tail)
    for chosen in range(min(head, k), max(0, k - room) - 1, -1):
        for rest in _spread(k - chosen, tail):
            yield (chosen,) + rest


def enumerate_realizations(d: DegreeSequence, guard: Optional[int] = None) -> List[LabeledGraph]:
    """All labeled realizations of d, sorted by their edge lists."""
    guard = guard if guard is not None else get_settings().enum_guard
    if d.n > guard:
        raise TooLarge(f"enumerate_realizations: n={d.n} exceeds guard {guard}")
    if _obviously_empty(d.degrees):
        return []

    found: List[List[Tuple[int, int]]] = []
    residual = list(d.degrees)
    edges: List[Tuple[int, int]] = []

    def extend(v: int) -> None:
        if v == d.n:
            found.append(list(edges))
            return
        need = residual[v]
        candidates = [w for w in range(v + 1, d.n) if residual[w] > 0]
        for chosen in combinations(candidates, need):
            for w in chosen:
                residual[w] -= 1
                edges.append((v, w))
            if graphic(residual[v + 1:]):
                extend(v + 1)
            for w in chosen:
                residual[w] += 1
                edges.pop()

    extend(0)
    found.sort()
    return [LabeledGraph.trusted(d.n, edge_list) for edge_list in found]


def perturbation_pairs(n: int, convention: Convention) -> List[Tuple[int, int]]:
    if convention == "i_le_j":
        return [(i, j) for i in range(n) for j in range(i, n)]
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def boundary_quotient(
    d: DegreeSequence,
    convention: Convention = "i_le_j",
    workers: Optional[int] = None,
    limit: Optional[int] = None,
) -> BoundaryReport:
    """
    Sum over index pairs of |G(d + 1^{+i,+j})| divided by |G(d)|, as an exact rational.

    :param convention: "i_le_j" includes the diagonal (i == j adds 2), "i_lt_j" does not.
    :param workers: thread count for the per-pair terms; terms are assembled in (i, j) order.
    """
    settings = get_settings()
    limit = limit if limit is not None else settings.count_limit
    workers = workers if workers is not None else settings.workers

    base = count_realizations(d, limit=limit)
    if base == 0:
        raise NotGraphic(f"{d} has no realization")

    pairs = perturbation_pairs(d.n, convention)

    def term(pair: Tuple[int, int]) -> int:
        return count_realizations(perturb(d, Perturbation.plus(*pair)), limit=limit)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(term, pairs))
    else:
        counts = [term(pair) for pair in pairs]

    terms: Dict[Tuple[int, int], int] = dict(zip(pairs, counts))
    quotient = Fraction(sum(counts), base)
    logger.info(f"boundary quotient of {d} ({convention}) = {quotient}")
    return BoundaryReport(quotient=quotient, convention=convention, terms=terms, base_count=base)
