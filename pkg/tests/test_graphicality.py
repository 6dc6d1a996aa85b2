import json

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from src.errors import NotGraphic, OddSum, Underflow
from src.models.sequence import DegreeSequence, LabeledGraph, Perturbation
from src.services.graphicality import (
    dump_graph,
    graph_degrees,
    graphic,
    havel_hakimi,
    is_graphic,
    load_graph,
    parse_sequence,
    perturb,
)
from tests.oracles import brute_force_graphic, sequences


def seq(*degrees: int) -> DegreeSequence:
    return DegreeSequence(degrees=degrees)


even_sequences = st.lists(st.integers(0, 6), min_size=1, max_size=7).filter(lambda d: sum(d) % 2 == 0)


def test_triangle_is_graphic():
    assert is_graphic(seq(2, 2, 2)).graphic


def test_failing_k_is_reported_on_the_sorted_order():
    verdict = is_graphic(seq(1, 3, 1, 3))
    assert not verdict.graphic
    assert verdict.failing_k == 2
    assert [1, 3, 1, 3][verdict.order[0]] == 3


def test_empty_graph_is_graphic():
    assert is_graphic(seq(0, 0, 0)).graphic


def test_odd_sum_raises():
    with pytest.raises(OddSum):
        is_graphic(seq(1, 1, 1))
    assert not graphic(seq(1, 1, 1))


def test_entry_above_n_minus_one_is_not_graphic():
    assert not is_graphic(seq(2, 2)).graphic


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_matches_exhaustive_search(n):
    for d in sequences(n):
        assert is_graphic(d).graphic == brute_force_graphic(d), d


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7])
def test_matches_exhaustive_search_large(n):
    for d in sequences(n):
        assert is_graphic(d).graphic == brute_force_graphic(d), d


@given(even_sequences.flatmap(lambda d: st.tuples(st.just(d), st.permutations(d))))
def test_permutation_invariance(pair):
    d, shuffled = pair
    assert graphic(d) == graphic(shuffled)


@pytest.mark.parametrize(
    "degrees, perturbation, expected",
    [
        ((1, 1, 0), Perturbation.plus(0, 2), (2, 1, 1)),
        ((2, 2, 2), Perturbation.plus(1, 1), (2, 4, 2)),
        ((2, 1, 1), Perturbation.minus(0, 1), (1, 0, 1)),
    ],
)
def test_perturb(degrees, perturbation, expected):
    assert perturb(DegreeSequence(degrees=degrees), perturbation).degrees == expected


def test_perturbation_is_stored_with_i_le_j():
    p = Perturbation.plus(3, 1)
    assert (p.i, p.j) == (1, 3)


def test_minus_perturbation_underflow():
    with pytest.raises(Underflow):
        perturb(seq(0, 1), Perturbation.minus(0, 1))
    with pytest.raises(Underflow):
        perturb(seq(1, 1), Perturbation.minus(0, 0))


@given(
    st.lists(st.integers(0, 5), min_size=1, max_size=6).flatmap(
        lambda d: st.tuples(st.just(d), st.integers(0, len(d) - 1), st.integers(0, len(d) - 1))
    )
)
def test_plus_then_minus_is_identity(case):
    degrees, i, j = case
    d = DegreeSequence(degrees=tuple(degrees))
    assert perturb(perturb(d, Perturbation.plus(i, j)), Perturbation.minus(i, j)) == d


@pytest.mark.parametrize(
    "n, edges, expected",
    [
        (3, [[0, 1]], (1, 1, 0)),
        (4, [[0, 2], [1, 2], [0, 3], [1, 3]], (2, 2, 2, 2)),
        (2, [], (0, 0)),
    ],
)
def test_graph_degrees(n, edges, expected):
    g = LabeledGraph(n=n, edges=edges)
    d = graph_degrees(g)
    assert d.degrees == expected
    assert d.total == 2 * len(g.edges)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_havel_hakimi_realizes_every_graphic_sequence(n):
    for degrees in sequences(n):
        d = DegreeSequence(degrees=degrees)
        if graphic(d):
            assert havel_hakimi(d).degrees() == degrees
        else:
            with pytest.raises(NotGraphic):
                havel_hakimi(d)


def test_sequences_reject_negative_entries():
    with pytest.raises(ValidationError):
        DegreeSequence(degrees=(1, -1))
    with pytest.raises(ValidationError):
        DegreeSequence(degrees=())


@pytest.mark.parametrize("edges", [[[0, 0]], [[0, 1], [1, 0]], [[0, 3]]])
def test_graphs_reject_loops_duplicates_and_out_of_range(edges):
    with pytest.raises(ValidationError):
        LabeledGraph(n=3, edges=edges)


def test_parse_sequence():
    assert parse_sequence("3, 3,1,1").degrees == (3, 3, 1, 1)
    with pytest.raises(ValueError):
        parse_sequence("3,x")


def test_graph_json_is_sorted_and_normalized():
    g = load_graph('{"n": 4, "edges": [[3, 1], [2, 0]]}')
    assert g.edges == frozenset({(1, 3), (0, 2)})
    assert json.loads(dump_graph(g)) == {"n": 4, "edges": [[0, 2], [1, 3]]}
