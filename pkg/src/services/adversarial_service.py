import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.config import get_settings
from src.errors import (
    Infeasible,
    InternalInvariantFailure,
    InvalidRegion,
    OddR,
    ParityImpossible,
    SigmaOutsideWindow,
)
from src.models.adversarial import EpsilonBound, SplitComposition, UnstableWindow
from src.models.region import SimpleRegion
from src.models.sequence import DegreeSequence, LabeledGraph
from src.services.graphicality import havel_hakimi

logger = logging.getLogger(__name__)

SQRT_SCALE = 10 ** 14


def _check_r(r: int) -> None:
    if r < 2 or r % 2:
        raise OddR(f"r must be an even integer >= 2, got {r}")


def half_graph_sequence(r: int) -> DegreeSequence:
    _check_r(r)
    half = r // 2
    return DegreeSequence(degrees=tuple(range(1, half + 1)) + tuple(range(half, r)))


def half_graph(r: int) -> Tuple[DegreeSequence, LabeledGraph]:
    """The half-graph sequence (1, ..., r/2, r/2, ..., r-1) and its unique realization."""
    h = half_graph_sequence(r)
    return h, havel_hakimi(h)


def near_regular_bipartite(x: int, y: int, e: int) -> LabeledGraph:
    """
    Bipartite graph on X = 0..x-1 and Y = x..x+y-1 with e edges and degrees taking two adjacent values per side.

    The first e mod x vertices of X (resp. Y) carry the ceiling degree. Each X vertex, largest demand first,
    takes the Y vertices with the largest remaining capacity.
    """
    if e < 0 or e > x * y:
        raise Infeasible(f"{e} edges do not fit between sides of size {x} and {y}")
    if e == 0:
        return LabeledGraph.trusted(x + y, [])

    x_need = [e // x + (1 if v < e % x else 0) for v in range(x)]
    y_room = [e // y + (1 if w < e % y else 0) for w in range(y)]
    edges = []
    for v in sorted(range(x), key=lambda v: (-x_need[v], v)):
        targets = sorted((w for w in range(y) if y_room[w] > 0), key=lambda w: (-y_room[w], w))
        if len(targets) < x_need[v]:
            raise Infeasible(f"near-regular fill ({x}, {y}, {e}) could not be completed")
        for w in targets[:x_need[v]]:
            y_room[w] -= 1
            edges.append((v, x + w))
    return LabeledGraph.trusted(x + y, edges)


def split_sigma(x: int, r: int, e: int) -> int:
    return r * r // 2 + 2 * x * r + x * (x - 1) + 2 * e


def compose_split(x: int, y: int, r: int, e: int) -> SplitComposition:
    """Clique X joined to a half-graph R, an independent Y, and a near-regular X-Y fill."""
    _check_r(r)
    bipartite = near_regular_bipartite(x, y, e)
    _, h = half_graph(r)

    x_block = range(0, x)
    r_offset, y_offset = x, x + r
    edges = set()
    for a in x_block:
        for b in range(a + 1, x):
            edges.add((a, b))
        for b in range(r_offset, r_offset + r):
            edges.add((a, b))
    for u, v in h.edges:
        edges.add((r_offset + u, r_offset + v))
    for u, v in bipartite.edges:
        # bipartite vertex x + w is Y vertex w
        edges.add((u, y_offset + (v - x)))

    graph = LabeledGraph.trusted(x + r + y, edges)
    degrees = DegreeSequence(degrees=graph.degrees())
    sigma = split_sigma(x, r, e)
    if degrees.total != sigma:
        raise InternalInvariantFailure(f"composition degree sum {degrees.total} != {sigma}")
    return SplitComposition(x=x, y=y, r=r, e=e, graph=graph, degrees=degrees, sigma=sigma)


def _sqrt_bracket(value: int) -> Tuple[Fraction, Fraction, bool]:
    root = isqrt(value)
    if root * root == value:
        return Fraction(root), Fraction(root), True
    scaled = isqrt(value * SQRT_SCALE * SQRT_SCALE)
    return Fraction(scaled, SQRT_SCALE), Fraction(scaled + 1, SQRT_SCALE), False


def discriminants(n: int, c1: int, c2: int, r: int) -> Tuple[int, int, int]:
    """(Q, Q(r), printed Q(r)); Q(r) is the discriminant of the overlap quadratic."""
    q = (c1 - c2 + 1) ** 2 - 4 * c2 * (n - 1 - c1)
    base = (c1 - c2 - r) ** 2 - 4 * c2 * (n - 1 - c1)
    return q, base - 4 * r, base + 4 * r


def epsilon_bound(n: int, c1: int, c2: int, r: int) -> Optional[EpsilonBound]:
    """epsilon = 1 - (sqrt(Q(r)) - r - 3) / sqrt(Q), bracketed; None unless Q > 0 and Q(r) >= 0."""
    q, q_r, _ = discriminants(n, c1, c2, r)
    if q <= 0 or q_r < 0:
        return None
    a_lo, a_hi, a_exact = _sqrt_bracket(q_r)
    b_lo, b_hi, b_exact = _sqrt_bracket(q)
    num_lo, num_hi = a_lo - r - 3, a_hi - r - 3
    if num_lo >= 0:
        ratio_lo, ratio_hi = num_lo / b_hi, num_hi / b_lo
    elif num_hi <= 0:
        ratio_lo, ratio_hi = num_lo / b_lo, num_hi / b_hi
    else:
        ratio_lo, ratio_hi = num_lo / b_lo, num_hi / b_lo
    return EpsilonBound(lower=1 - ratio_hi, upper=1 - ratio_lo, exact=a_exact and b_exact)


def interval(n: int, c1: int, c2: int, r: int, x: int) -> Tuple[int, int]:
    """The sigma interval [I_0^x, I_1^x] reachable with |X| = x."""
    common = r * r // 2 + x * (x + 2 * r - 1)
    return common + 2 * c2 * (n - x - r), common + 2 * x * (c1 - x - r + 1)


def _even_sigma_range(n: int, c1: int, c2: int, reach: int) -> Optional[Tuple[int, int]]:
    """Even sigma in [n*c2, n*c1] with |2(sigma - n*c2) - (1 + c1 + c2)(c1 - c2)| <= reach."""
    if reach < 0:
        return None
    center = (1 + c1 + c2) * (c1 - c2)
    lo = max(n * c2 + -((reach - center) // 2), n * c2)
    hi = min(n * c2 + (center + reach) // 2, n * c1)
    lo += lo % 2
    hi -= hi % 2
    return (lo, hi) if lo <= hi else None


def epsilon_interval(n: int, c1: int, c2: int, r: int) -> Optional[Tuple[int, int]]:
    """Even sigma whose normalized offset is at most (1 - epsilon) sqrt(Q) = sqrt(Q(r)) - (r + 3)."""
    spread = c1 - c2
    q, q_r, _ = discriminants(n, c1, c2, r)
    if spread <= 0 or q <= 0 or q_r < 0:
        return None
    reach = isqrt(spread * spread * q_r) - (r + 3) * spread
    return _even_sigma_range(n, c1, c2, reach)


def _overlap_roots(n: int, c1: int, c2: int, r: int) -> Optional[Tuple[int, int]]:
    b = c1 + c2 - r
    const = r + c2 * (n - 1 - r)

    def f(x: int) -> int:
        return x * x - b * x + const

    disc = b * b - 4 * const
    if disc < 0:
        return None
    s = isqrt(disc)
    if min(f(b // 2), f(b // 2 + 1)) > 0:
        return None
    lo = (b - s) // 2 - 1
    while f(lo) > 0:
        lo += 1
    hi = (b + s) // 2 + 2
    while f(hi) > 0:
        hi -= 1
    return lo, hi


def unstable_window(
    n: int,
    c1: int,
    c2: int,
    r: int,
    beta: Optional[Fraction] = None,
) -> UnstableWindow:
    """
    The sigma window covered by the overlapping intervals I^x, plus the epsilon bracket and, given beta,
    the check of the closing bound on epsilon.
    """
    if not n > c1 >= c2 >= 0:
        raise InvalidRegion(f"need n > c1 >= c2 >= 0, got n={n} c1={c1} c2={c2}")
    _check_r(r)
    q, q_r, q_r_printed = discriminants(n, c1, c2, r)
    roots = _overlap_roots(n, c1, c2, r)

    fields: Dict = {"n": n, "c1": c1, "c2": c2, "r": r, "q": q, "q_r": q_r, "q_r_printed": q_r_printed}
    if roots is None:
        fields["status"] = "empty_window"
    else:
        x_min, x_max = roots
        intervals = {x: interval(n, c1, c2, r, x) for x in range(x_min, x_max + 1)}
        fields.update(
            status="ok",
            x_min=x_min,
            x_max=x_max,
            sigma_min=intervals[x_min][0],
            sigma_max=intervals[x_max][1],
            intervals=intervals,
        )

    epsilon = epsilon_bound(n, c1, c2, r)
    fields["epsilon"] = epsilon
    fields["epsilon_status"] = _epsilon_status(q, q_r)
    fields["epsilon_interval"] = epsilon_interval(n, c1, c2, r)
    if beta is not None:
        beta = Fraction(beta)
        fields["beta"] = beta
        fields["gap_condition_holds"] = (1 - beta) * (c1 - c2 + 1) ** 2 >= 4 * c2 * (n - 1 - c1)
        if fields["gap_condition_holds"] and epsilon is not None and c1 > c2 and beta > 0:
            fields["epsilon_bound_holds"] = epsilon.upper <= Fraction(3 * (r + 3)) / (beta * (c1 - c2))
    return UnstableWindow(**fields)


def _epsilon_status(q: int, q_r: int) -> str:
    if q <= 0:
        return "q_nonpositive"
    if q_r < 0:
        return "negative_discriminant"
    return "ok"


def construct_unstable(region: SimpleRegion, r: int) -> Tuple[DegreeSequence, SplitComposition]:
    """
    A member of the region built as a split composition around a half-graph on r vertices.

    Uses the least x in [c2, c1 - r + 1] whose interval I^x contains sigma.
    """
    region.check()
    _check_r(r)
    n, sigma, c1, c2 = region.n, region.sigma, region.c1, region.c2
    for x in range(c2, c1 - r + 2):
        y = n - x - r
        if y < 0:
            break
        lo, hi = interval(n, c1, c2, r, x)
        if not lo <= sigma <= hi:
            continue
        twice_e = sigma - r * r // 2 - x * (x + 2 * r - 1)
        if twice_e % 2:
            raise ParityImpossible(f"sigma={sigma} and r={r} leave an odd edge budget at x={x}")
        e = twice_e // 2
        if not c2 * y <= e <= x * (c1 - x - r + 1):
            raise InternalInvariantFailure(f"e={e} outside the bipartite bounds at x={x}")
        composition = compose_split(x, y, r, e)
        if not region.contains(composition.degrees):
            raise InternalInvariantFailure(f"{composition.degrees} is not a member of {region}")
        logger.info(f"construct_unstable {region} r={r}: x={x} e={e}")
        return composition.degrees, composition
    raise SigmaOutsideWindow(f"sigma={sigma} lies in no I^x for r={r}")


def remark_r(n: int) -> int:
    """Even r close to (ln n)^2, at least 2."""
    r = int(math.log(n) ** 2) if n > 1 else 2
    r -= r % 2
    return max(r, 2)


def window_checks(window: UnstableWindow) -> Dict[str, Optional[bool]]:
    """Overlap of consecutive I^x, the two endpoint bounds, and containment of the epsilon interval."""
    checks: Dict[str, Optional[bool]] = {
        "overlap_ok": None,
        "lower_end_ok": None,
        "upper_end_ok": None,
        "containment_ok": None,
        "epsilon_bound_ok": window.epsilon_bound_holds,
    }
    spread = window.c1 - window.c2
    base = window.n * window.c2
    if not window.empty:
        xs = range(window.x_min, window.x_max + 1)
        checks["overlap_ok"] = all(window.intervals[x][0] <= window.intervals[x][1] for x in xs) and all(
            window.intervals[x + 1][0] <= window.intervals[x][1] for x in range(window.x_min, window.x_max)
        )
        checks["lower_end_ok"] = window.sigma_min <= (window.x_min + window.r) * spread + base
        checks["upper_end_ok"] = window.sigma_max >= window.x_max * spread + base
    eps_interval = window.epsilon_interval
    if eps_interval is not None:
        checks["containment_ok"] = (
            not window.empty and window.sigma_min <= eps_interval[0] and eps_interval[1] <= window.sigma_max
        )
    return checks


def sweep_windows(
    ns: Sequence[int],
    c2s: Sequence[int],
    rs: Sequence[int],
    betas: Sequence[Optional[Fraction]] = (None,),
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """One row per (n, c1, c2, r, beta) with Q > 0; c1 runs over every value in [c2, n - 1]."""
    workers = workers if workers is not None else get_settings().workers
    grid: List[Tuple[int, int, int, int, Optional[Fraction]]] = []
    for n, c2, r, beta in product(ns, c2s, rs, betas or (None,)):
        for c1 in range(c2, n):
            if (c1 - c2 + 1) ** 2 - 4 * c2 * (n - 1 - c1) > 0:
                grid.append((n, c1, c2, r, beta))

    def row(point: Tuple[int, int, int, int, Optional[Fraction]]) -> Dict:
        n, c1, c2, r, beta = point
        window = unstable_window(n, c1, c2, r, beta)
        epsilon = window.epsilon
        record = {
            "n": n,
            "c1": c1,
            "c2": c2,
            "r": r,
            "beta": None if beta is None else str(beta),
            "x_min": window.x_min,
            "x_max": window.x_max,
            "sigma_min": window.sigma_min,
            "sigma_max": window.sigma_max,
            "epsilon_num": None if epsilon is None else str(epsilon.upper.numerator),
            "epsilon_den": None if epsilon is None else str(epsilon.upper.denominator),
            "eq8_holds": window.gap_condition_holds,
        }
        record.update(window_checks(window))
        return record

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, grid))
    else:
        rows = [row(point) for point in grid]
    logger.info(f"window sweep over {len(rows)} grid points")
    return pd.DataFrame(rows)
