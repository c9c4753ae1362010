"""Construction pipelines: decompositions, covers, bipartition paths,
width doubling to permutations, three matchings, and strip tiling."""

from __future__ import annotations

from itertools import combinations
from math import comb

import pytest

from permsep import (
    FamilyTooLarge,
    LabelledGraph,
    StripParams,
    balanced_family,
    compatible,
    degree_graph,
    fixed_edge_family,
    ham_cover,
    ham_decomposition,
    neighbor_pairs,
    pad_to_width,
    pnn_family,
    pow2_family,
    pow2_stats,
    strip_family,
    three_matchings,
    union_contains_odd_cycle,
    unit_grid,
    verify_family,
)
from permsep.constructions import rotated_matchings
from permsep.labelled import Grid
from permsep.perms import _pair


def all_edges(n):
    return {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}


def is_hamiltonian_cycle(edges, n):
    adj = {v: [] for v in range(1, n + 1)}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    if any(len(nbrs) != 2 for nbrs in adj.values()):
        return False
    seen = [1, adj[1][0]]
    while len(seen) < n:
        nxt = [u for u in adj[seen[-1]] if u != seen[-2]]
        seen.append(nxt[0])
    return len(set(seen)) == n and seen[0] in adj[seen[-1]]


class TestFixedEdge:
    def test_counts(self):
        assert len(fixed_edge_family(3)) == 2
        assert len(fixed_edge_family(4)) == 6
        assert len(fixed_edge_family(6)) == 120

    def test_all_contain_the_edge_and_verify(self):
        fam = fixed_edge_family(5)
        assert all((1, 2) in neighbor_pairs(p) for p in fam)
        assert verify_family(fam, 2).ok

    def test_guard(self):
        with pytest.raises(ValueError):
            fixed_edge_family(9)


class TestHamDecomposition:
    def test_n4_trace(self):
        assert ham_decomposition(4) == [(1, 4, 2, 3), (2, 1, 3, 4)]

    @pytest.mark.parametrize("n", range(4, 21, 2))
    def test_partitions_all_edges(self, n):
        fam = ham_decomposition(n)
        assert len(fam) == n // 2
        seen = set()
        for p in fam:
            edges = neighbor_pairs(p)
            assert len(edges) == n - 1
            assert not (edges & seen)
            seen |= edges
        assert seen == all_edges(n)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            ham_decomposition(5)


class TestHamCover:
    def test_n5_trace(self):
        ms = rotated_matchings(5)
        assert ms[0] == {(2, 5), (3, 4)}
        h1 = ham_cover(5)[0]
        assert h1 in ((3, 4, 2, 5, 1), (1, 5, 2, 4, 3))

    @pytest.mark.parametrize("n", range(5, 20, 2))
    def test_intersection_graph_is_a_cycle(self, n):
        fam = ham_cover(n)
        assert len(fam) == n
        for p in fam:
            assert len(p) == n and len(set(p)) == n
        edges = [neighbor_pairs(p) for p in fam]
        deg = [0] * n
        reach = {0}
        adjacency = [[] for _ in range(n)]
        for i, j in combinations(range(n), 2):
            if edges[i] & edges[j]:
                deg[i] += 1
                deg[j] += 1
                adjacency[i].append(j)
                adjacency[j].append(i)
        assert all(d == 2 for d in deg)
        stack = [0]
        while stack:
            v = stack.pop()
            for u in adjacency[v]:
                if u not in reach:
                    reach.add(u)
                    stack.append(u)
        assert len(reach) == n

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            ham_cover(6)


class TestBalancedFamily:
    @pytest.mark.parametrize("n,expect", [
        (3, 3), (4, 3), (5, 10), (6, 10), (7, 35), (8, 35),
        (9, 126), (10, 126), (11, 462), (12, 462),
    ])
    def test_sizes(self, n, expect):
        half = comb(n, n // 2)
        assert expect == (half if n % 2 else half // 2)
        assert len(balanced_family(n)) == expect

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_pairwise_odd_cycle(self, n):
        fam = balanced_family(n)
        for p, q in combinations(fam, 2):
            assert union_contains_odd_cycle(p, q)

    def test_members_are_permutations(self):
        for p in balanced_family(7):
            assert sorted(p) == list(range(1, 8))


class TestPadToWidth:
    def test_pads_narrow_grid(self):
        w = LabelledGraph((Grid(((4,), (5,))),), isolated=1)
        out, fresh = pad_to_width(w, 2)
        assert fresh == 2
        assert out.grids[0].cells == ((4, 6), (5, 7))

    def test_uniform_untouched(self):
        w = LabelledGraph((Grid(((1, 2),)),), isolated=3)
        out, fresh = pad_to_width(w, 2)
        assert fresh == 0 and out == w

    def test_preserves_labels_hence_compatibility(self):
        w1 = LabelledGraph((Grid(((1, 2),)), unit_grid(3)), isolated=9)
        w2 = LabelledGraph((Grid(((1,), (2,))), unit_grid(3)), isolated=9)
        assert compatible(w1, w2)
        p1, _ = pad_to_width(w1, 2)
        p2, _ = pad_to_width(w2, 2)
        assert compatible(p1, p2)
        for pair, lab in w1.edge_labels.items():
            assert p1.edge_labels[pair] == lab

    def test_too_wide_rejected(self):
        w = LabelledGraph((Grid(((1, 2, 3),)),))
        with pytest.raises(ValueError):
            pad_to_width(w, 2)


class TestPow2Family:
    def test_n13_ell1(self):
        fam, n_prime = pow2_family(13, 1)
        assert len(fam) == 640 and n_prime == 15
        assert all(len(p) == 15 for p in fam)
        assert verify_family(fam, 3).ok

    def test_n5_ell1_machinery_yield(self):
        # one merge of 4 unit grids: 2 graphs x 2 grids each after padding
        fam, n_prime = pow2_family(5, 1)
        assert len(fam) == 8 and n_prime == 7
        assert verify_family(fam, 3).ok
        assert len(fam) == pow2_stats(5, 1).value

    def test_stats_match_enumeration(self):
        for n, ell in ((5, 1), (9, 1), (13, 1), (6, 2)):
            stats = pow2_stats(n, ell)
            fam, n_prime = pow2_family(n, ell)
            assert len(fam) == stats.value
            assert n_prime == stats.n_prime

    def test_ell2_is_5_separated(self):
        fam, _ = pow2_family(6, 2)
        assert verify_family(fam, 5).ok

    def test_cap(self):
        with pytest.raises(FamilyTooLarge):
            pow2_family(13, 1, cap=100)

    def test_count_only_large(self):
        stats = pow2_stats(64, 1)
        assert stats.value > 0 and stats.n_prime >= 64


class TestThreeMatchings:
    def test_n6_values(self):
        m1, m2, m3 = three_matchings(6)
        assert m3 == {(1, 4), (2, 5), (3, 6)}
        assert is_hamiltonian_cycle(m1 | m3, 6)

    def test_n8_values(self):
        _m1, _m2, m3 = three_matchings(8)
        assert m3 == {(1, 3), (4, 6), (5, 8), (2, 7)}

    @pytest.mark.parametrize("n", range(4, 26, 2))
    def test_pairwise_unions_hamiltonian(self, n):
        ms = three_matchings(n)
        for a, b in combinations(ms, 2):
            assert not (a & b)
            assert is_hamiltonian_cycle(a | b, n)

    def test_guards(self):
        with pytest.raises(ValueError):
            three_matchings(5)
        with pytest.raises(ValueError):
            three_matchings(2)


class TestPnnFamily:
    @pytest.mark.parametrize("n", range(3, 13))
    def test_sizes_and_separation(self, n):
        fam = pnn_family(n)
        expect = 3 * n // 2 if n % 2 == 0 else 3 * (n - 1) // 2
        assert len(fam) == expect
        assert verify_family(fam, n).ok

    @pytest.mark.parametrize("n", range(4, 13))
    def test_degree_graph(self, n):
        fam = pnn_family(n)
        dg = degree_graph(fam)
        assert dg.max_degree <= 3
        assert dg.edge_count == len(fam)

    def test_endpoint_pairs_distinct(self):
        fam = pnn_family(10)
        ends = {_pair(p[0], p[-1]) for p in fam}
        assert len(ends) == len(fam)

    def test_single_perm_degree(self):
        dg = degree_graph([(1, 2, 3)])
        assert dg.edge_count == 1 and dg.max_degree == 1


class TestStripFamily:
    def test_params(self):
        p = StripParams(2, 4)
        assert p.side == 10 and p.path_count == 8
        assert p.labeling_count == 256
        with pytest.raises(ValueError):
            StripParams(2, 5)  # r does not divide k
        with pytest.raises(ValueError):
            StripParams(1, 4)
        with pytest.raises(ValueError):
            StripParams(3, 3)  # host too small for 2^(r-1) type changes

    def test_family_2_4(self):
        fam = strip_family(2, 4)
        assert len(fam) == 256
        assert all(len(p) == 100 for p in fam)
        assert len(set(fam)) == 256

    def test_ground_edges_at_1_or_side(self):
        fam = strip_family(2, 4)
        side = 10
        for p in fam:
            pos = {v: i for i, v in enumerate(p)}
            for t in range(8):
                u = 2 * t + 1
                assert abs(pos[u] - pos[u + 1]) in (1, side)

    def test_fillers_partition_host(self):
        fam = strip_family(2, 4)
        for p in fam:
            assert sorted(p) == list(range(1, 101))

    def test_pairwise_separated(self):
        fam = strip_family(2, 4)
        rep = verify_family(fam, 11)
        assert rep.ok and rep.pairs_checked == 32640

    def test_cap(self):
        with pytest.raises(FamilyTooLarge):
            strip_family(2, 4, cap=10)
