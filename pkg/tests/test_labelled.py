"""Labelled grids, compatibility, zig-zag traversal, H-cycle view."""

from __future__ import annotations

import random
from itertools import permutations

import pytest

from permsep import (
    Grid,
    LabelledGraph,
    compatible,
    hcycle_from_perm,
    is_k_separated,
    pairwise_compatible,
    perm_from_hcycle,
    unit_grid,
    verify_family,
    z_swap,
    z_swap_all,
)


def random_uniform_graph(rng, g_max=6, w_max=4, h_max=4):
    """Random labelled graph with g grids of one width, shuffled ids."""
    g = rng.randint(0, g_max)
    w = rng.randint(1, w_max)
    heights = [rng.randint(1, h_max) for _ in range(g)]
    total = 1 + w * sum(heights)
    ids = list(range(1, total + 1))
    rng.shuffle(ids)
    it = iter(ids)
    isolated = next(it)
    grids = []
    for h in heights:
        grids.append(Grid(tuple(tuple(next(it) for _ in range(w))
                                for _ in range(h))))
    return LabelledGraph(tuple(grids), isolated=isolated)


class TestGridAndGraph:
    def test_grid_edges(self):
        g = Grid(((1, 2), (3, 4)))
        assert g.a_edges == {(1, 2), (3, 4)}
        assert g.b_edges == {(1, 3), (2, 4)}
        assert g.shape == (2, 2)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            Grid(((1, 2), (3,)))
        with pytest.raises(ValueError):
            Grid(((1, 1),))

    def test_graph_disjointness(self):
        with pytest.raises(ValueError):
            LabelledGraph((unit_grid(1), unit_grid(1)))
        with pytest.raises(ValueError):
            LabelledGraph((unit_grid(1),), isolated=1)

    def test_conflicting_extra_edge_rejected(self):
        with pytest.raises(ValueError):
            LabelledGraph((Grid(((1, 2),)),), extra_edges=((1, 2, "b"),))


class TestCompatibility:
    def test_examples(self):
        w1 = LabelledGraph(extra_edges=((1, 2, "a"),))
        w2 = LabelledGraph(extra_edges=((1, 2, "b"),))
        w3 = LabelledGraph(extra_edges=((3, 4, "b"),))
        assert compatible(w1, w2)
        assert not compatible(w1, w1)
        assert not compatible(w1, w3)

    def test_pairwise_report(self):
        w1 = LabelledGraph(extra_edges=((1, 2, "a"),))
        w2 = LabelledGraph(extra_edges=((1, 2, "b"),))
        assert pairwise_compatible([w1]).pairs_checked == 0
        assert pairwise_compatible([w1, w2]).ok
        rep = pairwise_compatible([w1, w1])
        assert not rep.ok and rep.witness == (0, 1)


class TestZSwap:
    def test_hand_traces(self):
        w = LabelledGraph((Grid(((1, 2), (3, 4))),), isolated=5)
        assert z_swap(w, (0,)) == (5, 1, 2, 3, 4)
        assert z_swap(w, (1,)) == (5, 2, 1, 4, 3)
        flat = LabelledGraph((Grid(((1, 2),)),), isolated=3)
        assert z_swap(flat, (0,)) == (3, 1, 2)

    def test_all_outputs(self):
        w = LabelledGraph((Grid(((1, 2), (3, 4))),), isolated=5)
        outs = z_swap_all(w)
        assert outs == [(5, 1, 2, 3, 4), (5, 2, 1, 4, 3)]
        assert is_k_separated(outs[0], outs[1], 3)

    def test_three_grids_give_eight(self):
        grids = tuple(Grid(((3 * i + 2, 3 * i + 3, 3 * i + 4),))
                      for i in range(3))
        w = LabelledGraph(grids, isolated=1)
        outs = z_swap_all(w)
        assert len(outs) == 8
        assert len(set(outs)) == 8

    def test_isolated_only(self):
        assert z_swap_all(LabelledGraph((), isolated=7)) == [(7,)]

    def test_errors(self):
        w = LabelledGraph((Grid(((1, 2),)), Grid(((3,), (4,)))), isolated=5)
        with pytest.raises(ValueError):
            z_swap(w, (0, 0))  # mixed widths
        ok = LabelledGraph((Grid(((1, 2),)),), isolated=5)
        with pytest.raises(ValueError):
            z_swap(ok, (0, 0))  # bits length
        with pytest.raises(ValueError):
            z_swap(LabelledGraph((Grid(((1, 2),)),)), (0,))  # no isolated

    def test_edge_distance_invariants_random(self):
        rng = random.Random(20240917)
        for _ in range(150):
            w = random_uniform_graph(rng)
            width = w.uniform_width()
            for p in z_swap_all(w):
                pos = {v: i for i, v in enumerate(p)}
                for (x, y), lab in w.edge_labels.items():
                    d = abs(pos[x] - pos[y])
                    assert d == (1 if lab == "a" else width)

    def test_family_is_width_plus_one_separated(self):
        rng = random.Random(5)
        for _ in range(30):
            w = random_uniform_graph(rng, g_max=4, w_max=3, h_max=3)
            if not w.grids:
                continue
            width = w.uniform_width()
            outs = z_swap_all(w)
            assert verify_family(outs, width + 1).ok


class TestHCycle:
    def test_round_trip(self):
        rng = random.Random(1)
        for _ in range(100):
            n = rng.randint(3, 9)
            p = tuple(rng.sample(range(1, n + 1), n))
            c = hcycle_from_perm(p)
            back = perm_from_hcycle(c)
            assert back in (p, tuple(reversed(p)))

    def test_small_example(self):
        c = hcycle_from_perm((1, 2, 3))
        assert c.b_edge == (1, 3)

    def test_n_separated_iff_cycles_compatible(self):
        cands = [p for p in permutations(range(1, 5)) if p[0] < p[-1]]
        for i, p in enumerate(cands):
            for q in cands[i + 1:]:
                want = is_k_separated(p, q, 4)
                got = compatible(hcycle_from_perm(p), hcycle_from_perm(q))
                assert want == got
