"""Core relation tests: pair sets, separation, set-pair view, verification."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permsep import (
    FamilyReport,
    as_permutation,
    is_k_separated,
    neighbor_pairs,
    product_family,
    separated_pairs,
    to_set_pair,
    union_contains_odd_cycle,
    verify_family,
    weakly_cross_intersecting,
)
from permsep.perms import sampled_pair_stream


def brute_force_separated(p, q, k):
    """Independent oracle: scan all element pairs by raw positions."""
    pos_p = {v: i for i, v in enumerate(p)}
    pos_q = {v: i for i, v in enumerate(q)}
    vs = list(p)
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            x, y = vs[a], vs[b]
            dp = abs(pos_p[x] - pos_p[y])
            dq = abs(pos_q[x] - pos_q[y])
            if (dp == 1 and dq == k - 1) or (dq == 1 and dp == k - 1):
                return True
    return False


perms_of = lambda n: st.permutations(list(range(1, n + 1)))


class TestPairSets:
    def test_neighbor_pairs_examples(self):
        assert neighbor_pairs((1, 3, 2)) == {(1, 3), (2, 3)}
        assert neighbor_pairs((1, 2, 3, 4)) == {(1, 2), (2, 3), (3, 4)}
        assert neighbor_pairs((5, 9, 7)) == {(5, 9), (7, 9)}

    def test_separated_pairs_examples(self):
        assert separated_pairs((1, 2, 3, 4), 3) == {(1, 3), (2, 4)}
        assert separated_pairs((1, 2, 3, 4), 4) == {(1, 4)}
        assert separated_pairs((1, 2, 3, 4), 2) == {(1, 2), (2, 3), (3, 4)}

    def test_separated_pairs_k_range(self):
        with pytest.raises(ValueError):
            separated_pairs((1, 2, 3), 1)
        with pytest.raises(ValueError):
            separated_pairs((1, 2, 3), 4)

    @given(st.integers(4, 9).flatmap(lambda n: st.tuples(
        perms_of(n), st.integers(2, n))))
    def test_sizes(self, case):
        p, k = case
        p = tuple(p)
        n = len(p)
        assert len(neighbor_pairs(p)) == n - 1
        assert len(separated_pairs(p, k)) == n - k + 1


class TestSeparation:
    def test_examples(self):
        assert is_k_separated((1, 2, 3, 4), (2, 4, 1, 3), 3)
        assert not is_k_separated((1, 2, 3, 4), (1, 2, 3, 4), 3)
        assert is_k_separated((1, 2, 3), (2, 1, 3), 2)

    def test_vertex_set_mismatch(self):
        with pytest.raises(ValueError):
            is_k_separated((1, 2, 3), (1, 2, 4), 3)

    @given(st.integers(4, 8).flatmap(lambda n: st.tuples(
        perms_of(n), perms_of(n), st.integers(2, n))))
    def test_symmetric_and_matches_brute_force(self, case):
        p, q, k = case
        p, q = tuple(p), tuple(q)
        got = is_k_separated(p, q, k)
        assert got == is_k_separated(q, p, k)
        assert got == brute_force_separated(p, q, k)

    @given(st.integers(4, 9).flatmap(lambda n: st.tuples(
        perms_of(n), st.integers(3, n))))
    def test_reversal_never_separated(self, case):
        p, k = case
        p = tuple(p)
        r = tuple(reversed(p))
        assert neighbor_pairs(p) == neighbor_pairs(r)
        assert not is_k_separated(p, r, k)


class TestSetPairView:
    def test_to_set_pair_examples(self):
        sp = to_set_pair((1, 2, 3, 4), 3)
        assert sp.a == {(1, 2), (2, 3), (3, 4)}
        assert sp.b == {(1, 3), (2, 4)}
        sp4 = to_set_pair((1, 2, 3, 4), 4)
        assert (len(sp4.a), len(sp4.b)) == (3, 1)
        sp2 = to_set_pair((1, 2), 2)
        assert sp2.a == sp2.b == {(1, 2)}

    def test_self_pair_not_cross_intersecting(self):
        s = to_set_pair((1, 2, 3, 4, 5), 3)
        assert not weakly_cross_intersecting(s, s)

    def test_reverse_pair_not_cross_intersecting(self):
        p = (1, 2, 3, 4, 5)
        s = to_set_pair(p, 3)
        t = to_set_pair(tuple(reversed(p)), 3)
        assert not weakly_cross_intersecting(s, t)

    @given(st.integers(5, 9).flatmap(lambda n: st.tuples(
        perms_of(n), perms_of(n), st.integers(3, 6))))
    def test_equivalent_to_separation(self, case):
        p, q, k = case
        p, q = tuple(p), tuple(q)
        if k > len(p):
            k = len(p)
        assert is_k_separated(p, q, k) == weakly_cross_intersecting(
            to_set_pair(p, k), to_set_pair(q, k))


class TestOddCycle:
    def test_examples(self):
        # union is the 4-cycle 1-2-3-4-1: bipartite
        assert not union_contains_odd_cycle((1, 2, 3, 4), (2, 1, 4, 3))
        assert union_contains_odd_cycle((1, 2, 3), (1, 3, 2))
        assert not union_contains_odd_cycle((1, 2, 3), (1, 2, 3))
        # any two distinct paths of K_3 share an edge and close a triangle
        assert union_contains_odd_cycle((1, 2, 3), (2, 1, 3))

    @given(st.integers(4, 8).flatmap(lambda n: st.tuples(
        perms_of(n), perms_of(n))))
    def test_3_separated_implies_odd_cycle(self, case):
        p, q = map(tuple, case)
        if is_k_separated(p, q, 3):
            assert union_contains_odd_cycle(p, q)


class TestVerifyFamily:
    def test_single_pair(self):
        rep = verify_family([(1, 2, 3, 4), (2, 4, 1, 3)], 3)
        assert rep.ok and rep.pairs_checked == 1

    def test_singleton(self):
        rep = verify_family([(1, 2, 3)], 3)
        assert rep.ok and rep.pairs_checked == 0

    def test_reverse_witness(self):
        rep = verify_family([(1, 2, 3, 4), (4, 3, 2, 1)], 3)
        assert not rep.ok and rep.witness == (0, 1)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            verify_family([], 3)

    def test_report_invariant(self):
        with pytest.raises(ValueError):
            FamilyReport(2, 1, "exhaustive", False, witness=None)

    def test_sampled_reproducible(self):
        fam = [(1, 2, 3, 4, 5), (2, 4, 1, 3, 5), (3, 5, 2, 4, 1)]
        r1 = verify_family(fam, 3, "sampled", seed=7, count=50)
        r2 = verify_family(fam, 3, "sampled", seed=7, count=50)
        assert r1 == r2
        assert list(sampled_pair_stream(7, 3, 20)) == \
            list(sampled_pair_stream(7, 3, 20))


class TestProductFamily:
    def test_sizes(self):
        f1 = [(1, 2, 3)] * 1
        f2 = [(4, 5, 6)]
        assert product_family(f1, f2, 3) == [(1, 2, 3, 4, 5, 6)]

    def test_disjointness_required(self):
        with pytest.raises(ValueError):
            product_family([(1, 2, 3)], [(3, 4, 5)], 3)

    def test_product_of_separated_pairs_verifies(self):
        f1 = [(1, 2, 3, 4), (2, 4, 1, 3)]
        f2 = [(5, 6, 7, 8), (6, 8, 5, 7)]
        prod = product_family(f1, f2, 3)
        assert len(prod) == 4
        assert verify_family(prod, 3).ok
