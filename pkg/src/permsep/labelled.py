"""Labelled grids, labelled graphs, compatibility, and the zig-zag traversal.

A labelled grid is a w x h array of distinct vertex ids whose horizontal
adjacencies carry label ``a`` and vertical adjacencies label ``b``.  A
labelled graph is a vertex-disjoint list of grids plus one optional isolated
start vertex (and possibly a few bare labelled edges, used by tests and the
JSON format).  Two labelled graphs are *compatible* when they share an edge
that carries different labels in the two graphs.

``z_swap`` turns a width-uniform labelled graph into a permutation: start at
the isolated vertex, walk the grids in list order, rows top to bottom, each
grid traversed either always left-to-right (bit 0) or always right-to-left
(bit 1).  Every a-edge then sits at positional distance 1 and every b-edge
at distance w, so the 2^g bit choices yield pairwise (w+1)-neighbor
separated permutations, and compatible graphs separate across graphs too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .perms import FamilyReport, Pair, Perm, _pair

LABEL_A = "a"
LABEL_B = "b"


@dataclass(frozen=True)
class Grid:
    """Rectangular cell matrix; row 0 is the top row, column 0 the left."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise ValueError("grid must have at least one cell")
        w = len(self.cells[0])
        if any(len(row) != w for row in self.cells):
            raise ValueError("grid rows must have equal width")
        flat = [v for row in self.cells for v in row]
        if any(v < 1 for v in flat):
            raise ValueError("cell ids must be positive integers")
        if len(set(flat)) != len(flat):
            raise ValueError("duplicate id in grid")

    @property
    def width(self) -> int:
        return len(self.cells[0])

    @property
    def height(self) -> int:
        return len(self.cells)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.width, self.height)

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for row in self.cells for v in row)

    @cached_property
    def a_edges(self) -> frozenset[Pair]:
        return frozenset(
            _pair(row[c], row[c + 1])
            for row in self.cells
            for c in range(self.width - 1)
        )

    @cached_property
    def b_edges(self) -> frozenset[Pair]:
        return frozenset(
            _pair(self.cells[r][c], self.cells[r + 1][c])
            for r in range(self.height - 1)
            for c in range(self.width)
        )


def unit_grid(v: int) -> Grid:
    """A 1x1 grid holding one vertex."""
    return Grid(((v,),))


@dataclass(frozen=True)
class LabelledGraph:
    """Disjoint labelled grids, an optional isolated vertex, extra edges."""

    grids: tuple[Grid, ...] = ()
    isolated: int | None = None
    extra_edges: tuple[tuple[int, int, str], ...] = ()

    def __post_init__(self) -> None:
        normalized = tuple(sorted((min(u, v), max(u, v), lab)
                                  for u, v, lab in self.extra_edges))
        object.__setattr__(self, "extra_edges", normalized)
        seen: set[int] = set()
        if self.isolated is not None:
            if self.isolated < 1:
                raise ValueError("isolated vertex id must be positive")
            seen.add(self.isolated)
        for grid in self.grids:
            if seen & grid.vertices:
                raise ValueError("grids must be pairwise vertex-disjoint")
            seen |= grid.vertices
        labels: dict[Pair, str] = {}
        for grid in self.grids:
            for e in grid.a_edges:
                labels[e] = LABEL_A
            for e in grid.b_edges:
                labels[e] = LABEL_B
        for u, v, lab in normalized:
            if u == v:
                raise ValueError("loops are not allowed")
            if lab not in (LABEL_A, LABEL_B):
                raise ValueError(f"unknown label {lab!r}")
            if labels.get((u, v), lab) != lab:
                raise ValueError(f"edge ({u},{v}) carries two labels")
            labels[(u, v)] = lab
        object.__setattr__(self, "_labels", labels)

    @property
    def edge_labels(self) -> dict[Pair, str]:
        return self._labels  # type: ignore[attr-defined]

    @cached_property
    def vertices(self) -> frozenset[int]:
        vs = set()
        if self.isolated is not None:
            vs.add(self.isolated)
        for grid in self.grids:
            vs |= grid.vertices
        for u, v, _ in self.extra_edges:
            vs.add(u)
            vs.add(v)
        return frozenset(vs)

    def uniform_width(self) -> int:
        widths = {g.width for g in self.grids}
        if len(widths) > 1:
            raise ValueError(f"grids have mixed widths {sorted(widths)}")
        return widths.pop() if widths else 0


def compatible(w1, w2) -> bool:
    """Whether some shared edge carries opposite labels in the two graphs."""
    e1 = w1.edge_labels
    e2 = w2.edge_labels
    if len(e2) < len(e1):
        e1, e2 = e2, e1
    return any(e2.get(pair, lab) != lab for pair, lab in e1.items())


def pairwise_compatible(family) -> FamilyReport:
    """Exhaustive compatibility check with a deterministic first witness."""
    if not family:
        raise ValueError("family must be nonempty")
    m = len(family)
    for i in range(m):
        for j in range(i + 1, m):
            if not compatible(family[i], family[j]):
                return FamilyReport(m, m * (m - 1) // 2, "exhaustive", False,
                                    witness=(i, j))
    return FamilyReport(m, m * (m - 1) // 2, "exhaustive", True)


def z_swap(w_graph: LabelledGraph, bits) -> Perm:
    """Traverse the graph into a permutation, one direction bit per grid."""
    if w_graph.isolated is None:
        raise ValueError("z_swap needs an isolated start vertex")
    w_graph.uniform_width()
    bits = tuple(bits)
    if len(bits) != len(w_graph.grids):
        raise ValueError(
            f"need {len(w_graph.grids)} bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0 or 1")
    out = [w_graph.isolated]
    for grid, bit in zip(w_graph.grids, bits):
        for row in grid.cells:
            out.extend(reversed(row) if bit else row)
    return tuple(out)


def z_swap_all(w_graph: LabelledGraph) -> list[Perm]:
    """All 2^g traversals, bit sequences in lexicographic order."""
    g = len(w_graph.grids)
    return [z_swap(w_graph, bits) for bits in product((0, 1), repeat=g)]


@dataclass(frozen=True)
class LabelledHCycle:
    """Hamiltonian cycle with exactly one b-labelled edge."""

    cycle: tuple[int, ...]
    b_edge: Pair

    def __post_init__(self) -> None:
        n = len(self.cycle)
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        if len(set(self.cycle)) != n:
            raise ValueError("cycle must visit each vertex once")
        if self.b_edge not in self._cycle_edges():
            raise ValueError("b_edge must lie on the cycle")

    def _cycle_edges(self) -> frozenset[Pair]:
        n = len(self.cycle)
        return frozenset(_pair(self.cycle[i], self.cycle[(i + 1) % n])
                         for i in range(n))

    @cached_property
    def edge_labels(self) -> dict[Pair, str]:
        labels = {e: LABEL_A for e in self._cycle_edges()}
        labels[self.b_edge] = LABEL_B
        return labels


def hcycle_from_perm(p: Perm) -> LabelledHCycle:
    """Close the path with a b-labelled edge between its endpoints."""
    if len(p) < 3:
        raise ValueError("need at least 3 vertices")
    return LabelledHCycle(tuple(p), _pair(p[0], p[-1]))


def perm_from_hcycle(c: LabelledHCycle) -> Perm:
    """Cut the cycle at its b edge; returns the path or its reverse."""
    n = len(c.cycle)
    for i in range(n):
        if _pair(c.cycle[i], c.cycle[(i + 1) % n]) == c.b_edge:
            return c.cycle[i + 1:] + c.cycle[:i + 1]
    raise ValueError("b edge not found on cycle")
