import logging
from fractions import Fraction
from math import isqrt
from typing import Iterator, List, Optional, Tuple

import pandas as pd

from src.config import get_settings
from src.errors import TooLarge
from src.models.region import RegionClassification, SimpleRegion
from src.models.sequence import DegreeSequence
from src.services import adversarial_service
from src.services.graphicality import graphic

logger = logging.getLogger(__name__)


def leg_parts(r: SimpleRegion) -> Tuple[int, int, DegreeSequence]:
    """
    The extremal member of a region: floor(alpha) copies of c1, one middle value a, then c2.

    :param r: a simple region.
    :return: (floor(alpha), a, LEG sequence).
    """
    r.check()
    spread = r.c1 - r.c2
    if spread == 0:
        return 0, r.c2, DegreeSequence(degrees=(r.c1,) * r.n)

    excess = r.sigma - r.n * r.c2
    alpha_floor, remainder = divmod(excess, spread)
    if alpha_floor == r.n:
        return alpha_floor, r.c1, DegreeSequence(degrees=(r.c1,) * r.n)
    a_value = r.c2 + remainder
    degrees = (r.c1,) * alpha_floor + (a_value,) + (r.c2,) * (r.n - 1 - alpha_floor)
    return alpha_floor, a_value, DegreeSequence(degrees=degrees)


def leg_sequence(r: SimpleRegion) -> DegreeSequence:
    return leg_parts(r)[2]


def is_fully_graphic(r: SimpleRegion) -> bool:
    return graphic(leg_sequence(r))


def enumerate_region(r: SimpleRegion, guard: Optional[int] = None) -> List[DegreeSequence]:
    """All non-increasing members of the region, in lexicographically decreasing order."""
    r.check()
    guard = guard if guard is not None else get_settings().region_guard
    if r.n > guard:
        raise TooLarge(f"enumerate_region: n={r.n} exceeds guard {guard}")
    return [DegreeSequence(degrees=d) for d in _members(r.n, r.sigma, r.c1, r.c2)]


def _members(n: int, sigma: int, cap: int, floor: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        if sigma == 0:
            yield ()
        return
    for first in range(min(cap, sigma - (n - 1) * floor), floor - 1, -1):
        rest = sigma - first
        if (n - 1) * floor <= rest <= (n - 1) * first:
            for tail in _members(n - 1, rest, first, floor):
                yield (first,) + tail


def q_value(n: int, c1: int, c2: int) -> int:
    return (c1 - c2 + 1) ** 2 - 4 * c2 * (n - 1 - c1)


def instability_window(n: int, c1: int, c2: int) -> Optional[Tuple[int, int]]:
    """
    Even sigma in [n*c2, n*c1] with |2(sigma - n*c2) - (1 + c1 + c2)(c1 - c2)| <= (c1 - c2)(sqrt(Q) + 2).

    Returns None when Q <= 0, when c1 == c2 (the bound divides by c1 - c2) or when no even value qualifies.
    """
    spread = c1 - c2
    q = q_value(n, c1, c2)
    if spread == 0 or q <= 0:
        return None
    reach = isqrt(spread * spread * q) + 2 * spread
    center = (1 + c1 + c2) * spread
    lo = n * c2 + -((reach - center) // 2)
    hi = n * c2 + (center + reach) // 2
    lo = max(lo, n * c2)
    hi = min(hi, n * c1)
    lo += lo % 2
    hi -= hi % 2
    if lo > hi:
        return None
    return lo, hi


def window_status(n: int, c1: int, c2: int) -> str:
    if c1 == c2:
        return "undefined"
    return "ok" if instability_window(n, c1, c2) is not None else "empty"


def phi_jms(n: int, c1: int, c2: int) -> bool:
    return (c1 - c2 + 1) ** 2 <= 4 * c2 * (n - c1 - 1)


def phi_star_jms(n: int, sigma: int, c1: int, c2: int) -> bool:
    low = sigma - n * c2
    high = n * c1 - sigma
    return low * high <= (c1 - c2) * (low * (n - c1 - 1) + high * c2)


def phi_gs(sigma: int, c1: int, c2: int) -> bool:
    return c2 >= 2 and c1 >= 3 and 9 * c1 * c1 <= sigma


def phi_gs_plus(n: int, sigma: int, c1: int, c2: int, epsilon: Fraction) -> bool:
    epsilon = Fraction(epsilon)
    return (
        2 * n * epsilon * epsilon >= 1
        and c2 >= 2
        and c1 >= 3
        and c1 * c1 <= (1 - epsilon) * sigma
    )


def p4_holds(d: DegreeSequence) -> bool:
    """Gao–Greenhill condition on the non-increasing sort; empty sums are 0."""
    ordered = d.sorted_desc()
    c1 = ordered[0]
    return sum(ordered[:c1]) + 6 * c1 + 2 <= sum(ordered[c1:])


def classify(r: SimpleRegion, epsilon: Optional[Fraction] = None) -> RegionClassification:
    alpha_floor, a_value, leg = leg_parts(r)
    return RegionClassification(
        region=r,
        fully_graphic=graphic(leg),
        q_value=q_value(r.n, r.c1, r.c2),
        instability_window=instability_window(r.n, r.c1, r.c2),
        window_status=window_status(r.n, r.c1, r.c2),
        p1=phi_jms(r.n, r.c1, r.c2),
        p2=phi_star_jms(r.n, r.sigma, r.c1, r.c2),
        p3=phi_gs(r.sigma, r.c1, r.c2),
        gs_plus=None if epsilon is None else phi_gs_plus(r.n, r.sigma, r.c1, r.c2, epsilon),
        epsilon=None if epsilon is None else str(Fraction(epsilon)),
        leg=leg,
        alpha_floor=alpha_floor,
        a_value=a_value,
    )


def very_simple_regions(n: int, c1: int, c2: int) -> List[SimpleRegion]:
    """The simple regions making up the very simple region D(n, c1, c2), one per even sigma."""
    start = n * c2 + (n * c2) % 2
    regions = [SimpleRegion(n=n, sigma=s, c1=c1, c2=c2) for s in range(start, n * c1 + 1, 2)]
    for region in regions:
        region.check()
    return regions


def is_very_simple_fully_graphic(n: int, c1: int, c2: int) -> bool:
    return all(is_fully_graphic(region) for region in very_simple_regions(n, c1, c2))


def scan(
    n: int,
    c1: int,
    c2: int,
    r: Optional[int] = None,
    beta: Optional[Fraction] = None,
) -> pd.DataFrame:
    """One row per even sigma of the very simple region D(n, c1, c2)."""
    window = instability_window(n, c1, c2)
    unstable = adversarial_service.unstable_window(n, c1, c2, r, beta) if r is not None else None
    q = q_value(n, c1, c2)

    rows = []
    for region in very_simple_regions(n, c1, c2):
        row = {
            "sigma": region.sigma,
            "fully_graphic": is_fully_graphic(region),
            "q": q,
            "in_instability_window": window is not None and window[0] <= region.sigma <= window[1],
        }
        if unstable is not None:
            row["in_unstable_window"] = (
                not unstable.empty and unstable.sigma_min <= region.sigma <= unstable.sigma_max
            )
            interval = unstable.epsilon_interval
            row["in_epsilon_interval"] = interval is not None and interval[0] <= region.sigma <= interval[1]
        rows.append(row)
    logger.info(f"scan n={n} c1={c1} c2={c2}: {len(rows)} rows")
    return pd.DataFrame(rows)
