import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicut.core import (
    Bipartition,
    Digraph,
    GraphInputError,
    UnderlyingGraph,
    all_bipartitions,
    cut_stats,
    format_edge_list,
    format_partition,
    parse_edge_list,
    parse_partition,
)
from dicut.generators import eulerian_complete

from .conftest import random_digraph


def three_cycle() -> Digraph:
    return Digraph.from_edge_list([(0, 1), (1, 2), (2, 0)])


class TestDigraphConstruction:
    def test_three_cycle_degrees(self):
        g = three_cycle()
        assert g.n == 3 and g.m == 3
        assert all(g.degrees(v) == (1, 1, 2) for v in range(3))

    def test_antiparallel_pair_allowed(self):
        g = Digraph.from_edge_list([(0, 1), (1, 0)])
        assert g.m == 2
        assert g.antiparallel_pairs() == 1

    def test_loop_rejected_with_position(self):
        with pytest.raises(GraphInputError, match=r"edge #0 \(0,0\).*loop"):
            Digraph.from_edge_list([(0, 0)])

    def test_duplicate_rejected_with_position(self):
        with pytest.raises(GraphInputError, match=r"edge #2.*duplicate"):
            Digraph(3, [(0, 1), (1, 2), (0, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphInputError, match="out of range"):
            Digraph(2, [(0, 5)])

    def test_degree_cap_invariant(self):
        rng = random.Random(3)
        g = random_digraph(rng, 9, 0.5)
        assert all(g.degree(v) <= 2 * (g.n - 1) for v in range(g.n))
        assert g.m == sum(g.out_degree(v) for v in range(g.n))


class TestCutStats:
    def test_three_cycle_split(self):
        stats = cut_stats(three_cycle(), Bipartition.from_side1(3, {0}))
        assert (stats.e12, stats.e21) == (1, 1)
        assert stats.min_cut == 1

    def test_all_one_side(self):
        stats = cut_stats(three_cycle(), Bipartition((1, 1, 1)))
        assert (stats.e12, stats.e21) == (0, 0)

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="covers 2"):
            cut_stats(three_cycle(), Bipartition((1, 2)))

    def test_eulerian_k5_always_balanced(self):
        g = eulerian_complete(5)
        for part in all_bipartitions(5):
            stats = cut_stats(g, part)
            assert stats.e12 == stats.e21


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pool = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool))) if pool else []
    return Digraph(n, chosen)


@given(digraphs(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_edge_conservation(g, rng):
    side = tuple(rng.choice((1, 2)) for _ in range(g.n))
    part = Bipartition(side)
    stats = cut_stats(g, part)
    within = sum(1 for u, v in g.edges if side[u] == side[v])
    assert stats.e12 + stats.e21 + within == g.m


@given(digraphs(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_label_swap_swaps_cuts(g, rng):
    part = Bipartition(tuple(rng.choice((1, 2)) for _ in range(g.n)))
    a = cut_stats(g, part)
    b = cut_stats(g, part.swapped())
    assert (a.e12, a.e21) == (b.e21, b.e12)


@given(digraphs())
@settings(max_examples=60, deadline=None)
def test_underlying_collapses_antiparallel(g):
    und = g.underlying()
    assert und.m == g.m - g.antiparallel_pairs()


class TestUnderlying:
    def test_antiparallel_collapse(self):
        g = Digraph.from_edge_list([(0, 1), (1, 0)])
        assert g.underlying().edges == ((0, 1),)

    def test_three_cycle_triangle(self):
        assert three_cycle().underlying().m == 3

    def test_eulerian_k7(self):
        und = eulerian_complete(7).underlying()
        assert und.m == 21
        assert all(und.degree(v) == 6 for v in range(7))

    def test_odd_components(self):
        g = UnderlyingGraph(6, [(0, 1), (1, 2), (0, 2)])
        assert g.odd_components() == 4  # triangle plus three isolated vertices

    def test_induced_mapping(self):
        g = three_cycle()
        sub = g.induced([0, 2])
        assert sub.orig_ids == (0, 2)
        assert sub.edges == ((1, 0),)  # old (2,0) relabeled


class TestInterchangeFormats:
    def test_edge_list_round_trip(self):
        g = Digraph.from_edge_list([(0, 1), (1, 0), (2, 1)])
        text = format_edge_list(g, comments=["demo instance"])
        back = parse_edge_list(text)
        assert back.n == g.n and back.edges == g.edges

    def test_header_mismatch(self):
        with pytest.raises(GraphInputError, match="promises"):
            parse_edge_list("2 3\n0 1\n")

    def test_comments_ignored(self):
        g = parse_edge_list("# hello\n2 1\n# more\n0 1\n")
        assert g.m == 1

    def test_partition_round_trip(self):
        part = Bipartition((1, 2, 2, 1))
        assert parse_partition(format_partition(part), 4) == part

    def test_partition_errors(self):
        with pytest.raises(GraphInputError, match="side must be"):
            parse_partition("0 3\n1 1\n", 2)
        with pytest.raises(GraphInputError, match="covers 1 of 2"):
            parse_partition("0 1\n", 2)
        with pytest.raises(GraphInputError, match="duplicate"):
            parse_partition("0 1\n0 2\n", 2)


def test_all_bipartitions_counts():
    assert sum(1 for _ in all_bipartitions(4)) == 8
    assert sum(1 for _ in all_bipartitions(3, fixed_side1=None)) == 8
