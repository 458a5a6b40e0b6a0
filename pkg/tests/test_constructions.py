from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from hamiltonica.constructions import (
    FIXTURE_NAMES,
    all_trees,
    build_t_delta,
    cartesian_product,
    cycle_graph,
    double_star,
    fixture_path,
    fixture_paths,
    path_graph,
    product_pair,
    random_connected_graph,
    random_tree,
    resolve_fixture,
    star,
    tdelta_index,
    tdelta_path_factor,
    tdelta_times_path,
    tree_canonical_form,
    trees_by_prufer,
)
from hamiltonica.corpus import isomorphic
from hamiltonica.factors import PathSystem, is_path_factor
from hamiltonica.graph import Graph, InputError, Plain, TDelta, degree_sequence, is_connected, is_tree, tdelta

# unlabelled trees on 1..10 vertices
TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


class TestStandardFamilies:
    def test_path(self):
        g = path_graph(4)
        assert (g.n, g.m) == (4, 3)
        assert [g.labels[v] for v in range(4)] == [Plain(1), Plain(2), Plain(3), Plain(4)]

    def test_cycle_three_is_triangle(self):
        g = cycle_graph(3)
        assert g.m == 3 and all(g.degree(v) == 2 for v in range(3))

    def test_star(self):
        assert degree_sequence(star(3)) == [3, 1, 1, 1]

    @pytest.mark.parametrize("make,arg", [(path_graph, 0), (cycle_graph, 2), (star, 0)])
    def test_minimum_sizes(self, make, arg):
        with pytest.raises(InputError):
            make(arg)

    def test_double_star(self):
        g = double_star()
        assert g.n == 6 and degree_sequence(g) == [3, 3, 1, 1, 1, 1]


class TestTDelta:
    def test_delta3_census(self):
        g = build_t_delta(3)
        assert (g.n, g.m) == (15, 14)
        assert Counter(degree_sequence(g)) == {2: 1, 3: 6, 1: 8}

    @pytest.mark.parametrize("delta", range(3, 9))
    def test_census(self, delta):
        g = build_t_delta(delta)
        census = Counter(degree_sequence(g))
        assert g.n == 6 * delta - 3
        assert is_tree(g)
        if delta == 3:
            assert census == {2: 1, 3: 2 * delta - 2 + 2, 1: 4 * delta - 4}
        else:
            assert census == {2: 1, delta: 2, 3: 2 * delta - 2, 1: 4 * delta - 4}

    def test_delta4(self):
        g = build_t_delta(4)
        assert g.n == 21 and g.max_degree() == 4

    def test_too_small(self):
        with pytest.raises(InputError):
            build_t_delta(2)

    @pytest.mark.parametrize("delta", range(3, 9))
    def test_vertices_with_two_leaves(self, delta):
        g = build_t_delta(delta)
        leafy = [v for v in range(g.n) if sum(1 for w in g.adj[v] if g.degree(w) == 1) >= 2]
        assert len(leafy) == 2 * delta - 2

    def test_numbering(self):
        assert [tdelta_index(4, TDelta(r)) for r in "abc"] == [0, 1, 2]
        assert tdelta_index(4, TDelta("a_i", 1)) == 3
        assert tdelta_index(4, TDelta("c_i", 1)) == 6
        assert tdelta_index(4, TDelta("u_i", 1)) == 9
        with pytest.raises(InputError):
            tdelta_index(3, TDelta("a_i", 3))

    def test_adjacency_by_role(self):
        g = build_t_delta(4)
        ix = lambda name: g.vertex(tdelta(name))  # noqa: E731
        assert set(g.adj[ix("b")]) == {ix("a"), ix("c")}
        assert set(g.adj[ix("a")]) == {ix("b"), ix("a_1"), ix("a_2"), ix("a_3")}
        assert set(g.adj[ix("c_2")]) == {ix("c"), ix("y_2"), ix("z_2")}

    @pytest.mark.parametrize("delta", range(3, 9))
    def test_bold_factor_is_a_path_factor(self, delta):
        assert is_path_factor(build_t_delta(delta), PathSystem.of(tdelta_path_factor(delta)))


class TestCartesianProduct:
    def test_square(self):
        assert isomorphic(cartesian_product(path_graph(2), path_graph(2)), cycle_graph(4))

    def test_tdelta_times_p9_counts(self):
        g = tdelta_times_path(3, 9)
        assert (g.n, g.m) == (135, 14 * 9 + 15 * 8)

    def test_star_times_p2(self):
        g = cartesian_product(star(3), path_graph(2))
        assert (g.n, g.m) == (8, 10)

    def test_empty_factor(self):
        with pytest.raises(InputError):
            cartesian_product(Graph(0), path_graph(2))

    @given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=6))
    def test_sizes_and_definition(self, g, h):
        p = cartesian_product(g, h)
        assert p.n == g.n * h.n
        assert p.m == g.m * h.n + g.n * h.m
        k = h.n
        for u, v in p.edges():
            (x1, y1), (x2, y2) = divmod(u, k), divmod(v, k)
            assert (x1 == x2 and h.has_edge(y1, y2)) or (y1 == y2 and g.has_edge(x1, x2))

    @given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=6))
    def test_swap_map_is_isomorphism(self, g, h):
        gh, hg = cartesian_product(g, h), cartesian_product(h, g)
        swap = lambda v: (v % h.n) * g.n + v // h.n  # noqa: E731
        mapped = {tuple(sorted((swap(u), swap(v)))) for u, v in gh.edges()}
        assert mapped == set(hg.edges())


class TestTrees:
    @pytest.mark.parametrize("n,count", sorted(TREE_COUNTS.items()))
    def test_counts(self, n, count):
        trees = list(all_trees(n))
        assert len(trees) == count
        assert all(is_tree(t) and t.n == n for t in trees)
        assert len({tree_canonical_form(t) for t in trees}) == count

    def test_four_vertices(self):
        shapes = sorted(degree_sequence(t) for t in all_trees(4))
        assert shapes == [[2, 2, 1, 1], [3, 1, 1, 1]]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_prufer_enumeration(self, n):
        ours = {tree_canonical_form(t) for t in all_trees(n)}
        assert ours == {tree_canonical_form(t) for t in trees_by_prufer(n)}

    def test_out_of_range(self):
        with pytest.raises(InputError):
            list(all_trees(11))
        with pytest.raises(InputError):
            list(all_trees(0))

    @given(st.integers(1, 12), st.randoms(use_true_random=False))
    def test_canonical_form_is_label_invariant(self, n, rnd):
        t = random_tree(n, random.Random(rnd.random()))
        perm = list(range(n))
        rnd.shuffle(perm)
        relabelled = Graph(n, [(perm[u], perm[v]) for u, v in t.edges()])
        assert tree_canonical_form(relabelled) == tree_canonical_form(t)

    def test_canonical_form_needs_tree(self):
        with pytest.raises(InputError):
            tree_canonical_form(cycle_graph(4))

    @given(st.integers(2, 14), st.floats(0, 1), st.integers(0, 10**6))
    def test_random_connected(self, n, p, seed):
        g = random_connected_graph(n, p, random.Random(seed))
        assert g.n == n and is_connected(g)


class TestFixtures:
    def test_m1(self):
        f = fixture_path("M", 1)
        expected = [("a", 1), ("a", 2), ("b", 2), ("b", 3), ("a", 3), ("a", 4)]
        assert f.vertices == tuple(product_pair(t, y) for t, y in expected)

    def test_x1(self):
        f = fixture_path("X", 1)
        expected = [("a", 1), ("a", 2), ("b", 2), ("c", 2), ("c", 1)]
        assert f.vertices == tuple(product_pair(t, y) for t, y in expected)

    def test_branch_index_rules(self):
        with pytest.raises(InputError):
            fixture_path("Q", 1)
        with pytest.raises(InputError):
            fixture_path("M", 1, 2)
        with pytest.raises(InputError):
            fixture_path("W", 1)
        with pytest.raises(InputError):
            fixture_paths(3, 3)

    @pytest.mark.parametrize("delta", [3, 4])
    @pytest.mark.parametrize("m", range(4, 10))
    def test_all_fixtures_are_paths(self, delta, m):
        g = tdelta_times_path(delta, m)
        fixtures = fixture_paths(delta, m)
        assert {f.name for f in fixtures} == set(FIXTURE_NAMES)
        per_i = 6 + 4 * (delta - 1)
        assert len(fixtures) == (m - 3) * per_i
        for f in fixtures:
            seq = resolve_fixture(g, f)
            assert len(set(seq)) == len(seq)
            assert all(g.has_edge(u, v) for u, v in zip(seq, seq[1:]))
