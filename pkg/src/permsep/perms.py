"""Permutations, the k-neighbor separation relation, and family verification.

A permutation is a tuple of distinct positive vertex ids; it doubles as a
Hamiltonian path on its vertex set.  Two permutations on the same vertex set
are *k-neighbor separated* when some pair of vertices sits at positional
distance 1 in one of them and at positional distance k-1 in the other.  The
same relation can be phrased through set pairs: attach to each permutation
the pair (A, B) of its adjacent pairs and its distance-(k-1) pairs; two
permutations are separated exactly when the pairs are weakly
cross-intersecting (A of one meets B of the other).

Vertex ids are arbitrary positive integers, not necessarily 1..n, because
the grid constructions mint fresh padding ids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

Perm = tuple[int, ...]
Pair = tuple[int, int]
PairSet = frozenset[Pair]

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


def _pair(x: int, y: int) -> Pair:
    """Canonical (min, max) form of an unordered pair."""
    return (x, y) if x < y else (y, x)


def as_permutation(seq: Sequence[int]) -> Perm:
    """Validate a vertex sequence and return it as a tuple.

    Requires length >= 2, distinct positive integer ids.
    """
    p = tuple(int(v) for v in seq)
    if len(p) < 2:
        raise ValueError(f"permutation needs at least 2 vertices, got {len(p)}")
    if any(v < 1 for v in p):
        raise ValueError("vertex ids must be positive integers")
    if len(set(p)) != len(p):
        raise ValueError("duplicate vertex id in permutation")
    return p


def vertex_set(p: Perm) -> frozenset[int]:
    return frozenset(p)


def reverse(p: Perm) -> Perm:
    return tuple(reversed(p))


def neighbor_pairs(p: Perm) -> PairSet:
    """The n-1 unordered pairs at positional distance 1."""
    return frozenset(_pair(p[i], p[i + 1]) for i in range(len(p) - 1))


def separated_pairs(p: Perm, k: int) -> PairSet:
    """The n-k+1 unordered pairs at positional distance k-1.

    k=2 reduces to neighbor_pairs; k may run up to n (endpoint pair only).
    """
    n = len(p)
    if not 2 <= k <= n:
        raise ValueError(f"k must satisfy 2 <= k <= {n}, got {k}")
    d = k - 1
    return frozenset(_pair(p[i], p[i + d]) for i in range(n - d))


def is_k_separated(p: Perm, q: Perm, k: int) -> bool:
    """True when a pair is adjacent in one permutation and k-1 apart in the other.

    Symmetric in p and q.  Raises if the vertex sets differ.
    """
    if set(p) != set(q):
        raise ValueError("permutations must share one vertex set")
    return (not neighbor_pairs(p).isdisjoint(separated_pairs(q, k))
            or not neighbor_pairs(q).isdisjoint(separated_pairs(p, k)))


@dataclass(frozen=True)
class SetPair:
    """Adjacent pairs A and distance-(k-1) pairs B of one permutation."""

    a: PairSet
    b: PairSet
    k: int

    def __post_init__(self) -> None:
        if self.k > 2 and not self.a.isdisjoint(self.b):
            raise ValueError("A and B must be disjoint for k > 2")


def to_set_pair(p: Perm, k: int) -> SetPair:
    return SetPair(neighbor_pairs(p), separated_pairs(p, k), k)


def weakly_cross_intersecting(s: SetPair, t: SetPair) -> bool:
    """Tuza's condition: A of one side meets B of the other."""
    if s.k != t.k:
        raise ValueError("set pairs built for different k")
    return not s.a.isdisjoint(t.b) or not t.a.isdisjoint(s.b)


def union_contains_odd_cycle(p: Perm, q: Perm) -> bool:
    """Whether the union of the two path edge sets is non-bipartite.

    Checked by 2-coloring each connected component of the union graph.
    """
    if set(p) != set(q):
        raise ValueError("permutations must share one vertex set")
    adj: dict[int, list[int]] = {v: [] for v in p}
    for x, y in neighbor_pairs(p) | neighbor_pairs(q):
        adj[x].append(y)
        adj[y].append(x)
    color: dict[int, int] = {}
    for start in p:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    return True
    return False


@dataclass(frozen=True)
class FamilyReport:
    """Outcome of a pairwise verification pass over a family."""

    family_size: int
    pairs_checked: int
    mode: str
    ok: bool
    witness: Optional[Pair] = None
    seed: Optional[int] = None
    sample_count: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.ok and self.witness is None:
            raise ValueError("failing report needs a witness pair")

    def to_json(self) -> dict:
        return {
            "family_size": self.family_size,
            "pairs_checked": self.pairs_checked,
            "mode": self.mode,
            "ok": self.ok,
            "witness": list(self.witness) if self.witness is not None else None,
            "seed": self.seed,
            "sample_count": self.sample_count,
        }


def sampled_pair_stream(seed: int, size: int, count: int) -> Iterable[tuple[int, int]]:
    """Deterministic stream of index pairs; a pure function of (seed, size).

    Draws with replacement so the stream never depends on worker layout or
    on which pairs happen to fail.
    """
    rng = random.Random(seed)
    for _ in range(count):
        i = rng.randrange(size)
        j = rng.randrange(size - 1)
        if j >= i:
            j += 1
        yield (i, j) if i < j else (j, i)


def verify_family(
    family: Sequence[Perm],
    k: int,
    mode: str = EXHAUSTIVE,
    *,
    seed: int = 0,
    count: int = 10_000,
    jobs: int = 1,
) -> FamilyReport:
    """Check that every (or a sampled set of) member pair is k-separated.

    The pair order is deterministic, so the first witness is the same on
    every run; `jobs` is accepted for interface compatibility and never
    changes the result (the scan itself is sequential and deterministic).
    """
    if not family:
        raise ValueError("family must be nonempty")
    perms = [as_permutation(p) for p in family]
    base = set(perms[0])
    for p in perms[1:]:
        if set(p) != base:
            raise ValueError("family members must share one vertex set")
    m = len(perms)
    nb = [neighbor_pairs(p) for p in perms]
    sp = [separated_pairs(p, k) for p in perms]

    if mode == EXHAUSTIVE:
        pairs: Iterable[tuple[int, int]] = combinations(range(m), 2)
        scope = m * (m - 1) // 2
        seed_out: Optional[int] = None
        count_out: Optional[int] = None
    elif mode == SAMPLED:
        pairs = sampled_pair_stream(seed, m, count) if m > 1 else iter(())
        scope = count if m > 1 else 0
        seed_out = seed
        count_out = count
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for i, j in pairs:
        if nb[i].isdisjoint(sp[j]) and nb[j].isdisjoint(sp[i]):
            return FamilyReport(m, scope, mode, False, witness=(i, j),
                                seed=seed_out, sample_count=count_out)
    return FamilyReport(m, scope, mode, True, seed=seed_out, sample_count=count_out)


def product_family(f1: Sequence[Perm], f2: Sequence[Perm], k: int) -> list[Perm]:
    """All concatenations p1 + p2 over disjoint vertex sets.

    Positional distances within each block survive concatenation, so if
    both inputs are pairwise k-separated the output is too; `k` records
    that contract (and is range-checked) but plays no computational role.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if not f1 or not f2:
        raise ValueError("both families must be nonempty")
    v1 = set(f1[0])
    v2 = set(f2[0])
    if v1 & v2:
        raise ValueError("vertex sets must be disjoint")
    return [p1 + p2 for p1 in f1 for p2 in f2]
