import json
import logging
from typing import Sequence

from src.errors import NotGraphic, OddSum, Underflow
from src.models.sequence import DegreeSequence, GraphicVerdict, LabeledGraph, Perturbation

logger = logging.getLogger(__name__)


def _as_degrees(d) -> Sequence[int]:
    return d.degrees if isinstance(d, DegreeSequence) else tuple(d)


def is_graphic(d) -> GraphicVerdict:
    """
    Erdős–Gallai test on the non-increasing sort of d.

    :param d: a DegreeSequence (or any sequence of non-negative ints).
    :return: verdict with the least violating k (1-based) and the sorting permutation.
    """
    degrees = _as_degrees(d)
    total = sum(degrees)
    if total % 2:
        raise OddSum(f"degree sum {total} is odd")

    n = len(degrees)
    order = tuple(sorted(range(n), key=lambda v: -degrees[v]))
    s = [degrees[v] for v in order]
    prefix = [0] * (n + 1)
    for idx, value in enumerate(s):
        prefix[idx + 1] = prefix[idx] + value

    # w = number of entries >= k; non-increasing in k
    w = n
    for k in range(1, n + 1):
        while w > 0 and s[w - 1] < k:
            w -= 1
        split = max(k, w)
        tail = k * (split - k) + (prefix[n] - prefix[split])
        if prefix[k] > k * (k - 1) + tail:
            return GraphicVerdict(graphic=False, failing_k=k, order=order)
    return GraphicVerdict(graphic=True, order=order)


def graphic(d) -> bool:
    """Parity-tolerant shorthand: odd sums are simply not graphic."""
    degrees = _as_degrees(d)
    if sum(degrees) % 2:
        return False
    return is_graphic(degrees).graphic


def perturb(d: DegreeSequence, p: Perturbation) -> DegreeSequence:
    if p.i >= d.n or p.j >= d.n:
        raise IndexError(f"perturbation ({p.i}, {p.j}) out of range for n={d.n}")
    delta = 1 if p.sign == "plus" else -1
    degrees = list(d.degrees)
    degrees[p.i] += delta
    degrees[p.j] += delta
    if degrees[p.i] < 0 or degrees[p.j] < 0:
        raise Underflow(f"minus perturbation at ({p.i}, {p.j}) underflows {d}")
    return DegreeSequence(degrees=tuple(degrees))


def graph_degrees(g: LabeledGraph) -> DegreeSequence:
    return DegreeSequence(degrees=g.degrees())


def havel_hakimi(d: DegreeSequence) -> LabeledGraph:
    """
    Positional Havel–Hakimi realization: the vertex with the largest residual degree (least index on ties)
    is joined to the largest remaining residuals (least index on ties).
    """
    if d.total % 2 or not is_graphic(d).graphic:
        raise NotGraphic(f"{d} is not graphic")

    residual = list(d.degrees)
    edges = []
    while True:
        hub = max(range(d.n), key=lambda v: (residual[v], -v))
        need = residual[hub]
        if need == 0:
            break
        residual[hub] = 0
        candidates = sorted(
            (v for v in range(d.n) if v != hub and residual[v] > 0),
            key=lambda v: (-residual[v], v),
        )
        if len(candidates) < need:
            raise NotGraphic(f"{d} is not graphic")
        for v in candidates[:need]:
            residual[v] -= 1
            edges.append((hub, v) if hub < v else (v, hub))
    logger.debug(f"havel_hakimi realized {d} with {len(edges)} edges")
    return LabeledGraph.trusted(d.n, edges)


def parse_sequence(text: str) -> DegreeSequence:
    """Parses the comma-separated form used on the command line, e.g. `3,3,1,1`."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return DegreeSequence(degrees=tuple(int(p) for p in parts))


def load_graph(text: str) -> LabeledGraph:
    return LabeledGraph.model_validate(json.loads(text))


def dump_graph(g: LabeledGraph) -> str:
    return json.dumps(g.to_json_dict())
