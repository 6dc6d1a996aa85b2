from fractions import Fraction

import pytest

from src.errors import Infeasible, InvalidRegion, OddR, SigmaOutsideWindow
from src.models.region import SimpleRegion
from src.services.adversarial_service import (
    compose_split,
    construct_unstable,
    discriminants,
    epsilon_bound,
    half_graph,
    half_graph_sequence,
    interval,
    near_regular_bipartite,
    remark_r,
    split_sigma,
    sweep_windows,
    unstable_window,
    window_checks,
)
from src.services.counting_service import boundary_quotient, count_realizations
from src.services.graphicality import graph_degrees

GRID_NS = range(20, 201, 20)
GRID_C2S = (1, 2, 3)
GRID_RS = (2, 4, 8)
GRID_BETAS = (Fraction(1, 2), Fraction(9, 10))


def test_half_graph_sequence():
    assert half_graph_sequence(2).degrees == (1, 1)
    assert half_graph_sequence(4).degrees == (1, 2, 2, 3)
    assert half_graph_sequence(6).degrees == (1, 2, 3, 3, 4, 5)


@pytest.mark.parametrize("r", [2, 4, 6, 8])
def test_half_graph_has_a_unique_realization(r):
    h, g = half_graph(r)
    assert graph_degrees(g) == h
    assert count_realizations(h) == 1


@pytest.mark.parametrize("r", [0, 3, -2])
def test_r_must_be_even_and_positive(r):
    with pytest.raises(OddR):
        half_graph_sequence(r)
    with pytest.raises(OddR):
        unstable_window(100, 60, 1, r)


def test_half_graph_boundary_grows():
    values = [boundary_quotient(half_graph_sequence(r)).quotient for r in (4, 6, 8)]
    assert values[:2] == [3, 20]
    assert all(later >= 2 * earlier for earlier, later in zip(values, values[1:]))


@pytest.mark.parametrize("x, y", [(1, 1), (2, 3), (3, 2), (4, 4), (5, 3)])
def test_near_regular_bipartite(x, y):
    for e in range(x * y + 1):
        g = near_regular_bipartite(x, y, e)
        assert len(g.edges) == e
        assert all(u < x <= v for u, v in g.edges)
        degrees = g.degrees()
        assert set(degrees[:x]) <= {e // x, -(-e // x)}
        assert set(degrees[x:]) <= {e // y, -(-e // y)}


def test_near_regular_bipartite_rejects_too_many_edges():
    with pytest.raises(Infeasible):
        near_regular_bipartite(2, 2, 5)
    with pytest.raises(Infeasible):
        near_regular_bipartite(0, 3, 1)
    assert near_regular_bipartite(0, 3, 0).edges == frozenset()


@pytest.mark.parametrize(
    "args, degrees, sigma",
    [
        ((0, 0, 4, 0), (1, 2, 2, 3), 8),
        ((1, 1, 4, 1), (5, 2, 3, 3, 4, 1), 18),
        ((2, 2, 4, 2), (6, 6, 3, 4, 4, 5, 1, 1), 30),
    ],
)
def test_compose_split_examples(args, degrees, sigma):
    composition = compose_split(*args)
    assert composition.degrees.degrees == degrees
    assert composition.sigma == sigma


@pytest.mark.parametrize("r", [2, 4, 6])
def test_compose_split_blocks(r):
    h = half_graph_sequence(r).degrees
    for x in range(4):
        for y in range(4):
            for e in range(x * y + 1):
                c = compose_split(x, y, r, e)
                g = c.graph
                assert c.sigma == split_sigma(x, r, e) == sum(c.degrees.degrees)
                assert all(g.has_edge(a, b) for a in c.x_block for b in c.x_block if a < b)
                assert all(g.has_edge(a, b) for a in c.x_block for b in c.r_block)
                assert not any(g.has_edge(a, b) for a in c.y_block for b in c.y_block if a < b)
                assert not any(g.has_edge(a, b) for a in c.r_block for b in c.y_block)
                assert [c.degrees.degrees[v] - x for v in c.r_block] == list(h)


def test_unstable_window_example():
    window = unstable_window(100, 60, 1, 4, Fraction(9, 10))
    assert window.status == "ok"
    assert (window.x_min, window.x_max) == (2, 55)
    assert (window.sigma_min, window.sigma_max) == (214, 3638)
    assert (window.q, window.q_r, window.q_r_printed) == (3444, 2853, 2885)
    assert Fraction(209, 1000) < window.epsilon.lower <= window.epsilon.upper < Fraction(2092, 10000)
    assert not window.epsilon.exact
    assert window.gap_condition_holds
    assert window.epsilon_bound_holds
    assert window.intervals[2] == interval(100, 60, 1, 4, 2)

    payload = window.to_json_dict()
    assert payload["sigma_min"] == 214
    assert payload["sigma_max"] == 3638
    assert payload["beta"] == "9/10"
    assert payload["eq8_holds"] is True
    assert payload["intervals"][0] == {"x": 2, "lo": 214, "hi": window.intervals[2][1]}


def test_unstable_window_empty():
    window = unstable_window(10, 4, 2, 2)
    assert window.status == "empty_window"
    assert window.empty
    assert window.epsilon_status == "q_nonpositive"
    assert window.epsilon is None


def test_unstable_window_rejects_bad_region():
    with pytest.raises(InvalidRegion):
        unstable_window(10, 10, 2, 2)


def test_epsilon_is_undefined_for_negative_discriminant():
    q, q_r, _ = discriminants(20, 10, 1, 8)
    assert q > 0 and q_r < 0
    assert epsilon_bound(20, 10, 1, 8) is None
    assert unstable_window(20, 10, 1, 8).epsilon_status == "negative_discriminant"


def test_construct_unstable_small():
    degrees, composition = construct_unstable(SimpleRegion(n=6, sigma=18, c1=5, c2=1), 4)
    assert (composition.x, composition.e) == (1, 1)
    assert degrees.degrees == (5, 2, 3, 3, 4, 1)


def test_construct_unstable_large():
    region = SimpleRegion(n=100, sigma=1000, c1=60, c2=1)
    degrees, composition = construct_unstable(region, 4)
    assert (composition.x, composition.e) == (9, 424)
    assert region.contains(degrees)
    assert {degrees.degrees[v] for v in composition.x_block} <= {59, 60}


def test_construct_unstable_outside_window():
    with pytest.raises(SigmaOutsideWindow):
        construct_unstable(SimpleRegion(n=100, sigma=4000, c1=60, c2=1), 4)


def test_composition_boundary_dominates_half_graph():
    degrees, _ = construct_unstable(SimpleRegion(n=6, sigma=18, c1=5, c2=1), 4)
    assert boundary_quotient(degrees).quotient >= boundary_quotient(half_graph_sequence(4)).quotient


def test_remark_r():
    assert remark_r(100) == 20
    assert remark_r(2) == 2
    assert remark_r(1) == 2


def _check_grid(ns, c2s, rs, betas) -> None:
    for n in ns:
        for c2 in c2s:
            for c1 in range(c2, n):
                if discriminants(n, c1, c2, 2)[0] <= 0:
                    continue
                for r in rs:
                    for beta in betas:
                        window = unstable_window(n, c1, c2, r, beta)
                        checks = window_checks(window)
                        label = (n, c1, c2, r, beta)
                        if not window.empty:
                            assert checks["overlap_ok"], label
                            assert checks["lower_end_ok"], label
                            assert checks["upper_end_ok"], label
                        if window.gap_condition_holds and window.epsilon is not None and c1 > c2:
                            assert checks["epsilon_bound_ok"], label
                            if checks["containment_ok"] is not None:
                                assert checks["containment_ok"], label


def test_window_algebra_on_reduced_grid():
    _check_grid((20, 60, 100), GRID_C2S, GRID_RS, GRID_BETAS)


@pytest.mark.slow
def test_window_algebra_on_full_grid():
    _check_grid(GRID_NS, GRID_C2S, GRID_RS, GRID_BETAS)


def test_sweep_windows():
    table = sweep_windows([20], [1], [2])
    assert len(table) == 13
    assert list(table.columns[:12]) == [
        "n", "c1", "c2", "r", "beta", "x_min", "x_max",
        "sigma_min", "sigma_max", "epsilon_num", "epsilon_den", "eq8_holds",
    ]
    assert table["c1"].tolist() == list(range(7, 20))


def test_sweep_windows_in_parallel():
    serial = sweep_windows([40], [1, 2], [2, 4], [Fraction(1, 2)], workers=1)
    parallel = sweep_windows([40], [1, 2], [2, 4], [Fraction(1, 2)], workers=2)
    assert serial.equals(parallel)
