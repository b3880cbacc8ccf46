from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfree.coloring import enumerate_extendable_colorings, find_proper_coloring
from hfree.fixtures import colored_c6, complete, cycle, odd_cycle_blowup, path
from hfree.gadgets import eq_gadget, grotzsch, neq_gadget
from hfree.graph import Coloring, Embedding, Graph, GraphError, Pattern
from hfree.patterns import augment
from hfree.search import (
    count_triangles,
    find_colored_copy,
    find_copy,
    find_triangle,
    induced_subgraph,
    list_triangles,
)

from oracles import brute_has_copy, brute_projection, brute_triangles


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 2)])

    def test_duplicate_edges_collapse(self):
        g = Graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.m == 1

    @given(graphs())
    def test_symmetric_and_edge_count(self, g):
        for u in range(g.n):
            assert u not in g.adj[u]
            for v in g.adj[u]:
                assert u in g.adj[v]
            assert list(g.adj[u]) == sorted(g.adj[u])
        assert g.m * 2 == sum(len(a) for a in g.adj)
        assert len(g.edges()) + len(g.non_edges()) == g.n * (g.n - 1) // 2

    def test_remove_edge(self):
        g = complete(3).remove_edge(0, 1)
        assert g.m == 2 and not g.has_edge(0, 1)
        with pytest.raises(GraphError):
            g.remove_edge(0, 1)


class TestColoringAndPattern:
    def test_proper(self):
        assert Coloring(3, [0, 1, 2]).is_proper(complete(3))
        assert not Coloring(3, [0, 0, 1]).is_proper(complete(3))

    def test_color_out_of_palette(self):
        with pytest.raises(GraphError):
            Coloring(2, [0, 2])

    def test_pattern_rejects_improper_coloring(self):
        with pytest.raises(GraphError):
            Pattern(path(2), Coloring(3, [1, 1]))

    def test_pattern_rejects_bad_terminals(self):
        with pytest.raises(GraphError):
            Pattern(path(2), terminals={"u": 5})
        with pytest.raises(GraphError):
            Pattern(path(2), terminals={"u": 0, "v": 0})


class TestTriangles:
    def test_k3(self):
        assert find_triangle(complete(3)) == (0, 1, 2)

    def test_path_is_triangle_free(self):
        assert find_triangle(path(5)) is None

    def test_grotzsch_is_triangle_free(self):
        # oracle: exhaustive triple scan
        assert brute_triangles(grotzsch().graph) == []
        assert find_triangle(grotzsch().graph) is None

    def test_counts(self):
        assert count_triangles(complete(4)) == 4
        assert count_triangles(cycle(6)) == 0
        assert count_triangles(augment(path(5)).graph) == 0

    @given(graphs(max_n=9))
    def test_matches_brute_force(self, g):
        tris = brute_triangles(g)
        assert count_triangles(g) == len(tris)
        assert list_triangles(g) == tris
        assert find_triangle(g) == (tris[0] if tris else None)

    @given(graphs(max_n=9), st.data())
    def test_induced_subgraph_keeps_triangles(self, g, data):
        keep = data.draw(st.lists(st.integers(0, max(g.n - 1, 0)), unique=True)) if g.n else []
        sub, back = induced_subgraph(g, keep)
        assert count_triangles(sub) <= count_triangles(g)
        host_inside = {t for t in brute_triangles(g) if set(t) <= set(keep)}
        mapped = {tuple(sorted(back[v] for v in t)) for t in list_triangles(sub)}
        assert mapped == host_inside


class TestInducedSubgraph:
    def test_k4_to_k3(self):
        sub, back = induced_subgraph(complete(4), [0, 1, 2])
        assert sub == complete(3) and back == [0, 1, 2]

    def test_alternate_cycle_vertices(self):
        sub, _ = induced_subgraph(cycle(6), [0, 2, 4])
        assert sub.n == 3 and sub.m == 0

    def test_blowup_block_pair_is_complete_bipartite(self):
        g, _ = odd_cycle_blowup(9, 3)
        sub, back = induced_subgraph(g, [0, 1, 2, 3, 4, 5])
        assert back == [0, 1, 2, 3, 4, 5]
        assert set(sub.edges()) == {(a, b) for a in range(3) for b in range(3, 6)}

    def test_repeated_vertex(self):
        with pytest.raises(GraphError):
            induced_subgraph(path(3), [0, 0])


class TestFindCopy:
    def test_p3_in_k3(self):
        emb = find_copy(path(3), complete(3))
        assert emb is not None and emb.is_valid(path(3), complete(3))
        assert find_copy(path(3), complete(3), "induced") is None

    def test_c4_in_c9_blowup(self):
        g, _ = odd_cycle_blowup(9, 2)
        assert brute_has_copy(cycle(4), g)  # oracle
        emb = find_copy(cycle(4), g)
        assert emb is not None and emb.is_valid(cycle(4), g)

    def test_larger_pattern(self):
        assert find_copy(path(5), path(4)) is None

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            find_copy(path(2), path(2), "minor")

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=5), graphs(max_n=8), st.booleans())
    def test_agrees_with_permutation_oracle(self, p, h, induced):
        mode = "induced" if induced else "subgraph"
        emb = find_copy(p, h, mode)
        assert (emb is not None) == brute_has_copy(p, h, induced)
        if emb is not None:
            assert emb.is_valid(p, h)

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=5), graphs(max_n=8))
    def test_noninduced_copy_in_induced_free_host_uses_a_non_edge(self, p, h):
        if find_copy(p, h, "induced") is not None:
            return
        emb = find_copy(p, h, "subgraph")
        if emb is None:
            return
        phi = emb.map
        assert any(h.has_edge(phi[u], phi[v]) for u, v in p.non_edges())

    def test_embedding_validity_checks(self):
        assert not Embedding((0, 0), "subgraph").is_valid(path(2), path(3))
        assert not Embedding((0, 2), "subgraph").is_valid(path(2), path(3))
        assert not Embedding((0, 1, 2), "induced").is_valid(Graph(3, [(0, 1)]), path(3))


class TestColoredCopy:
    def test_colored_c6_absent_from_c9_blowup(self):
        g, col = odd_cycle_blowup(9, 2)
        assert find_colored_copy(colored_c6(), g, col) is None
        assert find_copy(cycle(6), g) is not None

    def test_single_red_vertex(self):
        pat = Pattern(Graph(1), Coloring(3, [0]))
        emb = find_colored_copy(pat, path(3), Coloring(3, [1, 0, 1]))
        assert emb is not None and emb.map == (1,)

    def test_palette_mismatch(self):
        pat = Pattern(Graph(1), Coloring(3, [0]))
        with pytest.raises(GraphError):
            find_colored_copy(pat, path(2), Coloring(4, [0, 3]))

    def test_colors_are_respected(self):
        pat = Pattern(path(2), Coloring(3, [0, 1]))
        host = path(3)
        assert find_colored_copy(pat, host, Coloring(3, [0, 2, 0])) is None
        emb = find_colored_copy(pat, host, Coloring(3, [2, 1, 0]))
        assert emb is not None and emb.map == (2, 1)


class TestExtendableColorings:
    def test_single_edge(self):
        got = enumerate_extendable_colorings(path(2), [0, 1])
        assert got == [(a, b) for a in range(3) for b in range(3) if a != b]

    def test_eq_gadget(self):
        g = eq_gadget()
        got = enumerate_extendable_colorings(g.graph, [g.terminals["u"], g.terminals["v"]])
        assert got == [(0, 0), (1, 1), (2, 2)]

    def test_neq_gadget(self):
        g = neq_gadget()
        got = enumerate_extendable_colorings(g.graph, [g.terminals["u"], g.terminals["v"]])
        assert got == [(a, b) for a in range(3) for b in range(3) if a != b]

    def test_fixed_partial_assignment(self):
        got = enumerate_extendable_colorings(path(3), [2], fixed={0: 0, 1: 1})
        assert got == [(0,), (2,)]

    def test_uncolorable(self):
        assert enumerate_extendable_colorings(complete(4), [0]) == []
        assert find_proper_coloring(complete(4)) is None

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=8))
    def test_full_projection_matches_exhaustive(self, g):
        assert enumerate_extendable_colorings(g, list(range(g.n))) == brute_projection(g, list(range(g.n)))

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=8), st.data())
    def test_partial_projection_matches_exhaustive(self, g, data):
        if not g.n:
            return
        terms = data.draw(st.lists(st.integers(0, g.n - 1), unique=True, max_size=4))
        assert enumerate_extendable_colorings(g, terms) == brute_projection(g, terms)

    @given(graphs(max_n=9), st.integers(1, 4))
    def test_found_coloring_is_proper(self, g, k):
        c = find_proper_coloring(g, k)
        if c is not None:
            assert c.is_proper(g) and c.palette == k
