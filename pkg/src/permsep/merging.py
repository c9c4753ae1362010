"""Grid merging: simple merges, multiple merging, and width doubling.

Two equal-shape grids merge in two conflicting ways.  *Adjoining* glues
them side by side into a grid twice as wide, labelling the seam column
``a``; *rotating down* flips the second grid by 180 degrees and stacks it
under the first into a grid twice as high, labelling the seam row ``b``.
The bottom-right corner of the first grid meets the bottom-left corner of
the second in both merges, with opposite labels, so the two outcomes are
compatible -- and they stay compatible with anything the input graph was
compatible with, because merging only adds edges.

*Multiple merging* fixes m ordered pairs of grids and picks, for each
subset S of ceil(m/2) pair indices, the graph that adjoins the pairs in S
and rotates down the rest: C(m, ceil(m/2)) pairwise compatible, pairwise
isomorphic graphs.  *Width doubling* iterates this along the sequence
a_0 > a_1 > ... (a_0 = largest even <= g, thereafter largest even
<= floor(a_i/4)): step i merges a_i grids of shape (w, 2^i h), namely the
grids rotated down in the previous step.  The family size is the product
of the per-step binomials; grid counts, leftovers and shape censuses admit
closed forms, computed here without enumeration for large g.

Ordering conventions (all deterministic): grids eligible for a step are
sorted by their smallest vertex id and paired consecutively; shape classes
are processed in lexicographic (w, h) order; subset choices enumerate in
lexicographic order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .labelled import Grid, LabelledGraph

ShapeCensus = tuple[tuple[tuple[int, int], int], ...]


def _census_key(counter: Counter) -> ShapeCensus:
    return tuple(sorted(counter.items()))


def _adjoin_cells(g1: Grid, g2: Grid) -> Grid:
    return Grid(tuple(r1 + r2 for r1, r2 in zip(g1.cells, g2.cells)))


def _rotate_down_cells(g1: Grid, g2: Grid) -> Grid:
    flipped = tuple(tuple(reversed(row)) for row in reversed(g2.cells))
    return Grid(g1.cells + flipped)


def _check_mergeable(g1: Grid, g2: Grid) -> None:
    if g1.shape != g2.shape:
        raise ValueError(
            f"grids must share one shape, got {g1.shape} and {g2.shape}")


def _replace_pair(w: LabelledGraph, i: int, j: int, merged: Grid) -> LabelledGraph:
    grids = tuple(merged if t == i else g
                  for t, g in enumerate(w.grids) if t != j)
    return LabelledGraph(grids, w.isolated, w.extra_edges)


def adjoin(w: LabelledGraph, i: int, j: int) -> LabelledGraph:
    """Merge grids i and j into one grid of doubled width."""
    if i == j:
        raise ValueError("cannot merge a grid with itself")
    g1, g2 = w.grids[i], w.grids[j]
    _check_mergeable(g1, g2)
    return _replace_pair(w, i, j, _adjoin_cells(g1, g2))


def rotate_down(w: LabelledGraph, i: int, j: int) -> LabelledGraph:
    """Merge grids i and j into one grid of doubled height (j flipped 180)."""
    if i == j:
        raise ValueError("cannot merge a grid with itself")
    g1, g2 = w.grids[i], w.grids[j]
    _check_mergeable(g1, g2)
    return _replace_pair(w, i, j, _rotate_down_cells(g1, g2))


@dataclass(frozen=True)
class MergePlan:
    """m ordered grid-index pairs plus the subset to adjoin."""

    pairs: tuple[tuple[int, int], ...]
    adjoin_set: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        object.__setattr__(self, "adjoin_set", frozenset(self.adjoin_set))
        used = [idx for pair in self.pairs for idx in pair]
        if len(set(used)) != len(used):
            raise ValueError("merge pairs must use distinct grids")
        if not self.adjoin_set <= set(range(len(self.pairs))):
            raise ValueError("adjoin_set out of range")


def multiple_merge(w: LabelledGraph, plan: MergePlan) -> LabelledGraph:
    """Apply one simple merge per planned pair, adjoining exactly on S."""
    merged_at: dict[int, Grid] = {}
    drop: set[int] = set()
    for t, (i, j) in enumerate(plan.pairs):
        g1, g2 = w.grids[i], w.grids[j]
        _check_mergeable(g1, g2)
        cells = (_adjoin_cells(g1, g2) if t in plan.adjoin_set
                 else _rotate_down_cells(g1, g2))
        merged_at[i] = cells
        drop.add(j)
    grids = tuple(merged_at.get(t, g)
                  for t, g in enumerate(w.grids) if t not in drop)
    return LabelledGraph(grids, w.isolated, w.extra_edges)


def multiple_merge_family(
    w: LabelledGraph, pairs: Sequence[tuple[int, int]]
) -> list[LabelledGraph]:
    """All C(m, ceil(m/2)) merge outcomes, subsets in lexicographic order."""
    m = len(pairs)
    if m == 0:
        raise ValueError("need at least one pair")
    out = []
    for s in combinations(range(m), (m + 1) // 2):
        out.append(multiple_merge(w, MergePlan(tuple(pairs), frozenset(s))))
    return out


def a_sequence(g: int) -> tuple[int, ...]:
    """The even merge counts a_0 > a_1 > ... driving width doubling.

    >>> a_sequence(12)
    (12, 2)
    >>> a_sequence(100)
    (100, 24, 6)
    >>> a_sequence(2)
    (2,)
    """
    if g < 2:
        raise ValueError("need at least 2 grids")
    values = []
    a = g - (g % 2)
    while a >= 2:
        values.append(a)
        nxt = a // 4
        a = nxt - (nxt % 2)
    return tuple(values)


@dataclass(frozen=True)
class FamilyStats:
    """Exact bookkeeping for a family of pairwise isomorphic labelled graphs."""

    family_size: int
    grid_count: int
    shape_census: ShapeCensus
    vertex_count: int

    @property
    def value(self) -> int:
        """family_size * 2^grid_count: the permutation yield after z_swap."""
        return self.family_size << self.grid_count

    def to_json(self) -> dict:
        return {
            "family_size": str(self.family_size),
            "grid_count": self.grid_count,
            "shape_census": {f"{w}x{h}": c for (w, h), c in self.shape_census},
            "value": str(self.value),
            "vertex_count": self.vertex_count,
        }


def family_stats(family: Sequence[LabelledGraph]) -> FamilyStats:
    """Census and value of a family; rejects mixed shape censuses."""
    if not family:
        raise ValueError("family must be nonempty")
    censuses = {_census_key(Counter(g.shape for g in w.grids)) for w in family}
    if len(censuses) != 1:
        raise ValueError("family members must share one shape census")
    first = family[0]
    return FamilyStats(
        family_size=len(family),
        grid_count=len(first.grids),
        shape_census=censuses.pop(),
        vertex_count=len(first.vertices),
    )


def _ordered_keysets(member: LabelledGraph, keysets: Iterable[frozenset[int]]
                     ) -> list[int]:
    """Indices of the grids whose vertex sets match, ordered by smallest id."""
    by_key = {g.vertices: idx for idx, g in enumerate(member.grids)}
    found = []
    for ks in keysets:
        if ks not in by_key:
            raise ValueError("expected grid is missing from graph")
        found.append(by_key[ks])
    return sorted(found, key=lambda idx: min(member.grids[idx].vertices))


def width_double(
    w: LabelledGraph, grid_indices: Sequence[int]
) -> tuple[list[LabelledGraph], FamilyStats]:
    """Iterated multiple merging over the a-sequence of the selected grids.

    The selected grids must share one shape (w0, h0).  Step i pairs up the
    a_i eligible grids of shape (w0, 2^i h0) -- at step 0 the selection
    itself, afterwards the grids rotated down by the previous step -- and
    branches over every adjoin subset.  Odd grids out are never touched
    again.  Returns the family and its stats.
    """
    indices = list(dict.fromkeys(grid_indices))
    if len(indices) != len(list(grid_indices)):
        raise ValueError("grid indices must be distinct")
    g = len(indices)
    if g < 2:
        raise ValueError("width doubling needs at least 2 grids")
    shapes = {w.grids[i].shape for i in indices}
    if len(shapes) != 1:
        raise ValueError(f"selected grids have mixed shapes {sorted(shapes)}")

    seq = a_sequence(g)
    # Each state is (graph, eligible grid keysets for the next step).
    states: list[tuple[LabelledGraph, list[frozenset[int]]]] = [
        (w, [w.grids[i].vertices for i in indices])
    ]
    for a in seq:
        m = a // 2
        next_states: list[tuple[LabelledGraph, list[frozenset[int]]]] = []
        for graph, pool in states:
            ordered = _ordered_keysets(graph, pool)
            chosen = ordered[:a]
            pairs = [(chosen[2 * t], chosen[2 * t + 1]) for t in range(m)]
            for s in combinations(range(m), (m + 1) // 2):
                merged = multiple_merge(graph, MergePlan(tuple(pairs), frozenset(s)))
                rotated = [
                    graph.grids[pairs[t][0]].vertices
                    | graph.grids[pairs[t][1]].vertices
                    for t in range(m) if t not in s
                ]
                next_states.append((merged, rotated))
        states = next_states
    family = [graph for graph, _ in states]
    return family, family_stats(family)


def complete_width_double(
    family: Sequence[LabelledGraph],
) -> tuple[list[LabelledGraph], FamilyStats]:
    """Width-double every shape class of every member, unioning the results.

    Classes are the grid sets of each input member, partitioned by shape
    and processed in lexicographic (w, h) order; grids created along the
    way never join a later class even if the shapes coincide.  Classes
    with fewer than 2 grids pass through untouched.
    """
    if not family:
        raise ValueError("family must be nonempty")
    family_stats(family)  # validates the shared census
    out: list[LabelledGraph] = []
    for w in family:
        classes: dict[tuple[int, int], list[frozenset[int]]] = {}
        for grid in w.grids:
            classes.setdefault(grid.shape, []).append(grid.vertices)
        members = [w]
        for shape in sorted(classes):
            keysets = classes[shape]
            if len(keysets) < 2:
                continue
            grown: list[LabelledGraph] = []
            for member in members:
                sub, _ = width_double(member, _ordered_keysets(member, keysets))
                grown.extend(sub)
            members = grown
        out.extend(members)
    return out, family_stats(out)


# ---------------------------------------------------------------------------
# Closed-form bookkeeping (no enumeration), for large-g probes and count-only
# pipelines.  Cross-checked against the enumerating functions in the tests.
# ---------------------------------------------------------------------------

def _comb(m: int, k: int) -> int:
    from math import comb
    return comb(m, k)


@dataclass(frozen=True)
class WidthDoubleProfile:
    """What one width doubling does to g grids of shape (w, h)."""

    g: int
    w: int
    h: int
    sequence: tuple[int, ...]
    family_size: int
    doubled_count: int          # grids of width 2w created
    census: ShapeCensus         # shapes produced, leftovers included
    leftover_cells: int         # vertices still in width-w grids


def width_double_profile(g: int, w: int = 1, h: int = 1) -> WidthDoubleProfile:
    seq = a_sequence(g)
    census: Counter = Counter()
    size = 1
    doubled = 0
    leftover_cells = 0
    if g - seq[0]:
        census[(w, h)] += g - seq[0]
        leftover_cells += (g - seq[0]) * w * h
    pool = None
    for i, a in enumerate(seq):
        if pool is not None and pool - a:  # odd grid out at this level
            census[(w, h * (1 << i))] += pool - a
            leftover_cells += (pool - a) * w * h * (1 << i)
        size *= _comb(a // 2, a // 4)
        census[(2 * w, h * (1 << i))] += (a + 3) // 4  # ceil(a/4) adjoined
        doubled += (a + 3) // 4
        pool = a // 4
    if pool:  # terminal rotated grids, too few to merge again
        depth = len(seq)
        census[(w, h * (1 << depth))] += pool
        leftover_cells += pool * w * h * (1 << depth)
    return WidthDoubleProfile(
        g=g, w=w, h=h, sequence=seq, family_size=size,
        doubled_count=doubled, census=_census_key(census),
        leftover_cells=leftover_cells,
    )


def complete_width_double_census(
    census: Counter, multiplier: int = 1
) -> tuple[Counter, int]:
    """Census and family-size effect of one complete width doubling."""
    produced: Counter = Counter()
    for (w, h) in sorted(census):
        g = census[(w, h)]
        if g < 2:
            produced[(w, h)] += g
            continue
        profile = width_double_profile(g, w, h)
        multiplier *= profile.family_size
        produced.update(dict(profile.census))
    return produced, multiplier
