from itertools import product
from typing import List, Optional, Tuple

import pytest

from src.errors import InvalidTrail, NotAPartition, PreconditionViolated, Underflow
from src.models.sequence import LabeledGraph, Perturbation
from src.models.trail import AlternatingTrail, HostileConfiguration
from src.services.graphicality import graph_degrees, graphic, perturb
from src.services.trail_service import (
    find_pre_witness_trail,
    find_witness_trail,
    flip_along_trail,
    symmetric_difference_trail,
    validate_trail,
    verify_hostile,
)
from tests.oracles import all_graphs, least_witness, realizations_by_degrees


def trail(*vertices: int, starts_with_edge: bool = True) -> AlternatingTrail:
    return AlternatingTrail(vertices=vertices, starts_with_edge=starts_with_edge)


def hostile(p, q, k=(), y=(), r=()) -> HostileConfiguration:
    return HostileConfiguration(p=p, q=q, k_prime=frozenset(k), y_prime=frozenset(y), r_prime=frozenset(r))


def test_single_edge_is_a_witness():
    g = LabeledGraph(n=2, edges=[[0, 1]])
    assert find_witness_trail(g, 0, 1).vertices == (0, 1)


def test_witness_on_four_cycle(four_cycle):
    assert find_witness_trail(four_cycle, 0, 1).vertices == (0, 2, 3, 1)


def test_no_witness_in_hostile_graph(hostile_five):
    assert find_witness_trail(hostile_five, 0, 1) is None


def test_witness_length_must_be_odd(four_cycle):
    with pytest.raises(ValueError):
        find_witness_trail(four_cycle, 0, 1, max_len=4)
    assert find_witness_trail(four_cycle, 0, 1, max_len=1) is None


def test_flip_along_trail(four_cycle):
    flipped = flip_along_trail(four_cycle, trail(0, 2, 3, 1))
    assert flipped.edges == frozenset({(1, 2), (2, 3), (0, 3)})
    assert flipped.degrees() == (1, 1, 2, 2)

    g = LabeledGraph(n=2, edges=[[0, 1]])
    assert flip_along_trail(g, trail(0, 1)).edges == frozenset()


@pytest.mark.parametrize(
    "vertices, position",
    [
        ((0, 1), 0),
        ((0, 2, 0), 1),
        ((0, 2, 1), 1),
        ((0, 2, 3, 3), 2),
        ((0, 9), 0),
    ],
)
def test_invalid_trails_report_position(four_cycle, vertices, position):
    with pytest.raises(InvalidTrail) as info:
        validate_trail(four_cycle, trail(*vertices))
    assert info.value.position == position


def test_trails_need_a_pair():
    with pytest.raises(ValueError):
        AlternatingTrail(vertices=(0,))


def test_pre_witness_trail_starts_with_non_edge(four_cycle):
    found = find_pre_witness_trail(four_cycle, 0, 1, allowed={0, 1, 2, 3})
    assert found.vertices == (0, 1)
    assert not found.starts_with_edge
    assert find_pre_witness_trail(four_cycle, 0, 1, allowed={0, 2}) is None


@pytest.mark.parametrize(
    "h0, h1, p, q, expected",
    [
        ((2, []), (2, [[0, 1]]), 0, 1, (1, 0)),
        ((4, [[0, 1]]), (4, [[0, 1], [0, 2]]), 0, 2, (2, 0)),
        ((4, [[1, 2], [2, 3], [0, 3]]), (4, [[0, 2], [1, 2], [0, 3], [1, 3]]), 0, 1, (1, 3, 2, 0)),
    ],
)
def test_symmetric_difference_trail(h0, h1, p, q, expected):
    g0 = LabeledGraph(n=h0[0], edges=h0[1])
    g1 = LabeledGraph(n=h1[0], edges=h1[1])
    assert symmetric_difference_trail(g0, g1, p, q).vertices == expected


def test_symmetric_difference_needs_matching_degrees(four_cycle):
    with pytest.raises(PreconditionViolated):
        symmetric_difference_trail(four_cycle, four_cycle, 0, 1)


# Relabelling maps any pair to (0, 0) or (0, 1), so the larger sweeps pin p and q.
PINNED_PAIRS = [(0, 0), (0, 1)]


def _unordered_pairs(n: int) -> List[Tuple[int, int]]:
    return [(p, q) for p in range(n) for q in range(p, n)]


def _check_symmetric_difference(n: int, pairs: Optional[List[Tuple[int, int]]] = None) -> None:
    table = realizations_by_degrees(n)
    for h1 in all_graphs(n):
        for p, q in pairs or _unordered_pairs(n):
            try:
                target = perturb(graph_degrees(h1), Perturbation.minus(p, q))
            except Underflow:
                continue
            for edges in table.get(target.degrees, []):
                h0 = LabeledGraph.trusted(n, edges)
                t = symmetric_difference_trail(h0, h1, p, q)
                validate_trail(h1, t)
                assert t.start == q and t.end == p and t.length % 2 == 1
                assert graph_degrees(flip_along_trail(h1, t)) == target


def test_symmetric_difference_on_every_four_vertex_pair():
    _check_symmetric_difference(4)


@pytest.mark.slow
def test_symmetric_difference_on_every_five_vertex_pair():
    _check_symmetric_difference(5)


@pytest.mark.slow
def test_symmetric_difference_on_six_vertices():
    _check_symmetric_difference(6, PINNED_PAIRS)


def _check_least_witness(n: int, max_len: int, pairs: Optional[List[Tuple[int, int]]] = None) -> None:
    for g in all_graphs(n):
        for p, q in pairs or [(p, q) for p in range(n) for q in range(n)]:
            found = find_witness_trail(g, p, q, max_len)
            expected = least_witness(g, p, q, max_len)
            assert (found.vertices if found else None) == expected, (g.edge_list(), p, q)


@pytest.mark.parametrize("max_len", [1, 3, 5, 11])
def test_witness_search_finds_least_trail(max_len):
    _check_least_witness(4, max_len)


@pytest.mark.slow
def test_witness_search_finds_least_trail_on_five_vertices():
    _check_least_witness(5, 11)


@pytest.mark.slow
def test_witness_search_finds_least_trail_on_six_vertices():
    _check_least_witness(6, 11, PINNED_PAIRS)


def test_verify_hostile_examples(hostile_five):
    config = hostile(0, 1, k={2}, y={3}, r={4})
    assert verify_hostile(hostile_five, config).ok

    empty = LabeledGraph(n=5)
    assert verify_hostile(empty, hostile(0, 1, y={2, 3, 4})).ok

    extra = LabeledGraph(n=5, edges=[[0, 2], [1, 2], [2, 4], [3, 4]])
    verdict = verify_hostile(extra, config)
    assert not verdict.ok and verdict.violated == "d"


def test_verify_hostile_reports_first_violation(hostile_five):
    assert verify_hostile(hostile_five, hostile(0, 1, k={2, 3}, r={4})).violated == "a"
    assert verify_hostile(hostile_five, hostile(0, 1, k={2}, r={3, 4})).violated == "b"
    assert verify_hostile(hostile_five, hostile(0, 1, y={2, 4}, r={3})).violated == "c"
    assert verify_hostile(hostile_five, hostile(0, 1, y={2, 3}, r={4})).violated == "d"
    assert verify_hostile(hostile_five, hostile(0, 1, k={4}, y={2, 3})).violated == "e"


def test_verify_hostile_needs_a_partition(hostile_five):
    with pytest.raises(NotAPartition):
        verify_hostile(hostile_five, hostile(0, 1, k={2}, y={3}))
    with pytest.raises(NotAPartition):
        verify_hostile(hostile_five, hostile(0, 1, k={2}, y={2, 3}, r={4}))


def _check_hostile_soundness(n: int, pairs: Optional[List[Tuple[int, int]]] = None) -> None:
    for g in all_graphs(n):
        degrees = graph_degrees(g)
        for p, q in pairs or _unordered_pairs(n):
            try:
                d_pp = perturb(degrees, Perturbation.minus(p, q))
            except Underflow:
                continue
            if not graphic(d_pp):
                continue
            rest = [v for v in range(n) if v not in (p, q)]
            for labels in product("KYR", repeat=len(rest)):
                blocks = {name: {v for v, label in zip(rest, labels) if label == name} for name in "KYR"}
                config = hostile(p, q, k=blocks["K"], y=blocks["Y"], r=blocks["R"])
                assert not verify_hostile(g, config).ok, (g.edge_list(), p, q, labels)


def test_hostile_configurations_prove_non_graphicality():
    _check_hostile_soundness(4)


@pytest.mark.slow
def test_hostile_configurations_prove_non_graphicality_on_five_vertices():
    _check_hostile_soundness(5)


@pytest.mark.slow
def test_hostile_configurations_prove_non_graphicality_on_six_vertices():
    _check_hostile_soundness(6, PINNED_PAIRS)
