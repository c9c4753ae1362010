"""End-to-end families: fixed-edge, decompositions, covers, bipartition
paths, the width-doubling pipeline for k = 2^l + 1, the three-matching
families for k = n, and the staircase strip tiling for large k.

Every construction is deterministic: same input, same output order.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations, permutations, product

from .labelled import Grid, LabelledGraph, unit_grid, z_swap_all
from .merging import complete_width_double, complete_width_double_census
from .perms import Pair, Perm, _pair


class FamilyTooLarge(RuntimeError):
    """Enumeration would exceed the configured cap; use count-only stats."""


# ---------------------------------------------------------------------------
# Shared-edge families and complete-graph path systems
# ---------------------------------------------------------------------------

def fixed_edge_family(n: int) -> list[Perm]:
    """All (n-1)! Hamiltonian paths containing the edge {1, 2}.

    One representative per path (the orientation whose first vertex is the
    smaller endpoint).  Every pair shares {1, 2}, so the family is pairwise
    2-neighbor separated.
    """
    if not 2 <= n <= 8:
        raise ValueError("n must be in 2..8 (factorial guard)")
    out = []
    for p in permutations(range(1, n + 1)):
        if p[0] > p[-1]:
            continue
        i = p.index(1)
        if (i > 0 and p[i - 1] == 2) or (i + 1 < n and p[i + 1] == 2):
            out.append(p)
    return out


def _rotate_vertex(v: int, shift: int, n: int) -> int:
    return (v - 1 + shift) % n + 1


def ham_decomposition(n: int) -> list[Perm]:
    """n/2 edge-disjoint Hamiltonian paths covering every edge of K_n.

    The base path zig-zags 1, n, 2, n-1, ...; the rest are its rotations
    v -> v+1 (mod n).  Requires even n.
    """
    if n % 2 or n < 4:
        raise ValueError("n must be even and at least 4")
    base = []
    lo, hi = 1, n
    for t in range(n):
        if t % 2 == 0:
            base.append(lo)
            lo += 1
        else:
            base.append(hi)
            hi -= 1
    return [tuple(_rotate_vertex(v, s, n) for v in base) for s in range(n // 2)]


def _walk_path(edges: frozenset[Pair], n: int) -> Perm:
    """Order the vertices of a Hamiltonian-path edge set, small end first."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    ends = sorted(v for v, nbrs in adj.items() if len(nbrs) == 1)
    if len(ends) != 2 or any(len(nbrs) > 2 for nbrs in adj.values()):
        raise ValueError("edge set is not a path")
    seq = [ends[0]]
    prev = None
    while len(seq) < n:
        nxt = [u for u in adj[seq[-1]] if u != prev]
        if len(nxt) != 1:
            raise ValueError("edge set is not a Hamiltonian path")
        prev = seq[-1]
        seq.append(nxt[0])
    return tuple(seq)


def rotated_matchings(n: int) -> list[frozenset[Pair]]:
    """The n rotations of the near-perfect matching {(2,n),(3,n-1),...}."""
    if n % 2 == 0 or n < 5:
        raise ValueError("n must be odd and at least 5")
    base = [(j, n + 2 - j) for j in range(2, (n + 1) // 2 + 1)]
    return [
        frozenset(_pair(_rotate_vertex(x, s, n), _rotate_vertex(y, s, n))
                  for x, y in base)
        for s in range(n)
    ]


def ham_cover(n: int) -> list[Perm]:
    """n Hamiltonian paths of K_n whose share-an-edge graph is an n-cycle.

    Path i is the union of rotated matchings i and i + (n-1)/2 (cyclically),
    so two paths share an edge exactly when their matching pairs intersect.
    Requires odd n.
    """
    ms = rotated_matchings(n)
    shift = (n - 1) // 2
    return [_walk_path(ms[i] | ms[(i + shift) % n], n) for i in range(n)]


def balanced_family(n: int) -> list[Perm]:
    """One alternating Hamiltonian path per balanced bipartition of [n].

    Sides are sorted ascending and interleaved starting from the larger
    side (odd n) or from the side containing vertex 1 (even n, picking one
    representative per unordered bipartition).  Any two members induce
    different bipartitions, so every pairwise union contains an odd cycle.
    """
    if not 3 <= n <= 14:
        raise ValueError("n must be in 3..14 (binomial guard)")
    ground = range(1, n + 1)
    out = []
    if n % 2:
        small_size = n // 2
        for small in combinations(ground, small_size):
            large = sorted(set(ground) - set(small))
            out.append(_interleave(large, sorted(small)))
    else:
        half = n // 2
        for rest in combinations(range(2, n + 1), half - 1):
            first = sorted((1,) + rest)
            second = sorted(set(ground) - set(first))
            out.append(_interleave(first, second))
    return out


def _interleave(first, second) -> Perm:
    seq = []
    for a, b in zip(first, second):
        seq.append(a)
        seq.append(b)
    seq.extend(first[len(second):])
    return tuple(seq)


# ---------------------------------------------------------------------------
# The k = 2^l + 1 pipeline
# ---------------------------------------------------------------------------

def pad_to_width(w_graph: LabelledGraph, target_w: int
                 ) -> tuple[LabelledGraph, int]:
    """Widen every narrow grid to target_w with fresh right-hand columns.

    Fresh ids are minted from max(vertex id) + 1, walking grids in list
    order and rows top to bottom.  Existing edges keep their labels, so
    compatibility with other graphs is preserved.
    """
    if any(g.width > target_w for g in w_graph.grids):
        raise ValueError("a grid is wider than the target width")
    next_id = max(w_graph.vertices) + 1 if w_graph.vertices else 1
    fresh = 0
    new_grids = []
    for grid in w_graph.grids:
        missing = target_w - grid.width
        if missing == 0:
            new_grids.append(grid)
            continue
        rows = []
        for row in grid.cells:
            pad = tuple(range(next_id, next_id + missing))
            next_id += missing
            fresh += missing
            rows.append(row + pad)
        new_grids.append(Grid(tuple(rows)))
    return LabelledGraph(tuple(new_grids), w_graph.isolated,
                         w_graph.extra_edges), fresh


@dataclass(frozen=True)
class Pow2Stats:
    """Count-only bookkeeping for the width-doubling pipeline."""

    n: int
    ell: int
    graph_count: int
    grid_count: int
    fresh_vertices: int

    @property
    def value(self) -> int:
        return self.graph_count << self.grid_count

    @property
    def n_prime(self) -> int:
        return self.n + self.fresh_vertices

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "graph_count": str(self.graph_count),
            "grid_count": self.grid_count,
            "fresh_vertices": self.fresh_vertices,
            "n_prime": self.n_prime,
            "value": str(self.value),
            "k": (1 << self.ell) + 1,
        }


def pow2_stats(n: int, ell: int) -> Pow2Stats:
    """Family size and ground-set growth without enumerating anything.

    The shape census evolves identically in every member, so the whole
    pipeline reduces to census arithmetic.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if n < 4:
        raise ValueError("n must be at least 4")
    census: Counter = Counter({(1, 1): n - 1})
    size = 1
    for _ in range(ell):
        census, size = complete_width_double_census(census, size)
    target = 1 << ell
    if any(w > target for (w, _h) in census):
        raise RuntimeError("pipeline produced a grid wider than 2^ell")
    fresh = sum((target - w) * h * c for (w, h), c in census.items())
    return Pow2Stats(n=n, ell=ell, graph_count=size,
                     grid_count=sum(census.values()), fresh_vertices=fresh)


def pow2_family(n: int, ell: int, *, cap: int = 1_000_000
                ) -> tuple[list[Perm], int]:
    """Pairwise (2^ell + 1)-neighbor separated permutations, enumerated.

    Starts from an isolated vertex plus n-1 unit grids, applies ell
    complete width doublings, pads every grid to width 2^ell, and runs the
    zig-zag traversal over every member.  Returns the family and the
    padded ground-set size.  Raises FamilyTooLarge above the cap.
    """
    stats = pow2_stats(n, ell)
    if stats.value > cap:
        raise FamilyTooLarge(
            f"family has {stats.value} permutations, cap is {cap}")
    w0 = LabelledGraph(tuple(unit_grid(v) for v in range(2, n + 1)), isolated=1)
    members = [w0]
    for _ in range(ell):
        members, _ = complete_width_double(members)
    target = 1 << ell
    padded = []
    fresh_counts = set()
    for member in members:
        pm, fresh = pad_to_width(member, target)
        padded.append(pm)
        fresh_counts.add(fresh)
    if len(fresh_counts) != 1 or len({pm.vertices for pm in padded}) != 1:
        raise RuntimeError("padding produced mismatched ground sets")
    perms = [p for pm in padded for p in z_swap_all(pm)]
    if len(perms) != stats.value:
        raise RuntimeError("enumerated size disagrees with census value")
    return perms, stats.n_prime


# ---------------------------------------------------------------------------
# k = n: three matchings and labelled H-cycles
# ---------------------------------------------------------------------------

def three_matchings(n: int) -> tuple[frozenset[Pair], frozenset[Pair],
                                     frozenset[Pair]]:
    """Three perfect matchings on even n whose pairwise unions are
    Hamiltonian cycles.

    M1 pairs consecutive vertices from 1, M2 from 2 (wrapping), and M3 is
    the half-shift matching for n = 4k+2 or the patched shift-by-(1,4)
    pattern for n = 4k.
    """
    if n % 2 or n < 4:
        raise ValueError("n must be even and at least 4")

    def md(v: int) -> int:
        return (v - 1) % n + 1

    m1 = frozenset(_pair(v, v + 1) for v in range(1, n, 2))
    m2 = frozenset({_pair(n, 1)} | {_pair(v, v + 1) for v in range(2, n - 1, 2)})
    if n % 4 == 2:
        m3 = frozenset(_pair(v, n // 2 + v) for v in range(1, n // 2 + 1))
    else:
        shifted = set()
        for l in range(n // 4):
            shifted.add(_pair(md(1 + 4 * l), md(4 + 4 * l)))
            shifted.add(_pair(md(3 + 4 * l), md(6 + 4 * l)))
        shifted -= {_pair(1, 4), _pair(md(3), md(6))}
        m3 = frozenset(shifted | {_pair(1, 3), _pair(md(4), md(6))})
    return m1, m2, m3


def _lengthened_matchings(n: int) -> tuple[frozenset[Pair], frozenset[Pair],
                                           frozenset[Pair]]:
    """Adapt the even-(n-1) matchings to odd n by rerouting one edge of M1
    and one of M2 through vertex n, keeping the three uncovered vertices
    distinct.  Deterministic first-fit scan."""
    m1, m2, m3 = three_matchings(n - 1)
    e1 = min(sorted(m1))
    keep1, miss1 = e1
    m1n = frozenset((m1 - {e1}) | {_pair(keep1, n)})
    for e in sorted(m2):
        for keep, miss in (e, (e[1], e[0])):
            if miss != miss1 and keep != keep1:
                m2n = frozenset((m2 - {e}) | {_pair(keep, n)})
                return m1n, m2n, m3
    raise RuntimeError("no valid reroute found")  # unreachable for n >= 5


def _cycle_sequence(edges: frozenset[Pair], n: int) -> Perm:
    """Cyclic vertex order of a union that is a Hamiltonian cycle or path.

    A path is closed implicitly: its sequence already is the cyclic order
    of path-plus-endpoint-edge.  Starts at vertex 1, walking toward its
    smaller neighbor.
    """
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    degrees = sorted(len(nbrs) for nbrs in adj.values())
    if degrees[0] == 1:
        if degrees[:2] != [1, 1] or degrees[2:] != [2] * (n - 2):
            raise ValueError("union is not a Hamiltonian path")
        return _walk_path(edges, n)
    if degrees != [2] * n:
        raise ValueError("union is not a Hamiltonian cycle")
    seq = [1, min(adj[1])]
    while len(seq) < n:
        nxt = [u for u in adj[seq[-1]] if u != seq[-2]]
        seq.append(nxt[0])
    if len(set(seq)) != n:
        raise ValueError("union is not a single cycle")
    return tuple(seq)


def _cut_cycle(cycle: Perm, edge: Pair) -> Perm:
    """Open the cyclic order at the given edge; its ends become endpoints."""
    n = len(cycle)
    for i in range(n):
        if _pair(cycle[i], cycle[(i + 1) % n]) == edge:
            return cycle[i + 1:] + cycle[:i + 1]
    raise ValueError("edge does not lie on the cycle")


def pnn_family(n: int) -> list[Perm]:
    """A pairwise n-neighbor separated family of size 3n/2 (even n) or
    3(n-1)/2 (odd n).

    Every member is a cut of one of the three matching-union cycles, with
    the cut edge ranging over one matching; cut edges are pairwise
    distinct, which drives the separation.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if n == 3:
        triangle = (1, 2, 3)
        return [_cut_cycle(triangle, e)
                for e in (_pair(1, 2), _pair(2, 3), _pair(1, 3))]
    if n % 2 == 0:
        ms = three_matchings(n)
    else:
        ms = _lengthened_matchings(n)
    out = []
    for i in range(3):
        cycle = _cycle_sequence(ms[i] | ms[(i + 1) % 3], n)
        for e in sorted(ms[i]):
            out.append(_cut_cycle(cycle, e))
    return out


@dataclass(frozen=True)
class DegreeGraph:
    """Endpoint-pair graph of a family read at k = n."""

    edges: frozenset[Pair]
    max_degree: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def degree_graph(family) -> DegreeGraph:
    """Graph whose edges are the members' endpoint pairs.

    For any pairwise n-separated family its maximum degree is at most 3,
    and the edge count equals the family size when endpoint pairs are
    distinct.
    """
    if not family:
        raise ValueError("family must be nonempty")
    edges = set()
    deg: Counter = Counter()
    for p in family:
        e = _pair(p[0], p[-1])
        if e not in edges:
            edges.add(e)
            deg[e[0]] += 1
            deg[e[1]] += 1
    return DegreeGraph(frozenset(edges), max(deg.values()))


# ---------------------------------------------------------------------------
# Strip tiling for large k
# ---------------------------------------------------------------------------

PLACEMENT_CONSTANT = 4  # gap cells allowed per type change, times r^2


@dataclass(frozen=True)
class StripParams:
    """Geometry of the staircase tiling: r-vertex paths into a
    (k+3r) x (k+3r) host grid."""

    r: int
    k: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if self.k % self.r:
            raise ValueError("r must divide k")
        need = self.k ** 2 + 4 * self.k * self.r \
            + (1 << (self.r - 1)) * PLACEMENT_CONSTANT * self.r ** 2
        if self.side ** 2 < need:
            raise ValueError(
                f"host grid too small: {self.side}^2 < {need}")

    @property
    def side(self) -> int:
        return self.k + 3 * self.r

    @property
    def path_count(self) -> int:
        return self.k ** 2 // self.r

    @property
    def labeling_count(self) -> int:
        return 1 << (self.path_count * (self.r - 1))


def strip_family(r: int, k: int, *, cap: int = 1_000_000) -> list[Perm]:
    """One permutation per a/b-labeling of k^2/r disjoint r-vertex paths.

    Each labelled path is drawn as a staircase in the host grid (an a-edge
    steps one column right, a b-edge one row down), equal label sequences
    tile an anti-diagonal band via (row+1, col-1) shifts, and leftover
    cells become fresh filler vertices.  Reading the host row-major puts
    every a-edge at positional distance 1 and every b-edge at distance
    k+3r, so the family is pairwise (k+3r+1)-neighbor separated.
    """
    params = StripParams(r, k)
    if params.labeling_count > cap:
        raise FamilyTooLarge(
            f"{params.labeling_count} labelings exceed cap {cap}")
    edges_per_path = r - 1
    out = []
    for labels in product("ab", repeat=params.path_count * edges_per_path):
        per_path = [labels[t * edges_per_path:(t + 1) * edges_per_path]
                    for t in range(params.path_count)]
        out.append(_place_labeling(per_path, params))
    return out


def _place_labeling(per_path: list[tuple[str, ...]], params: StripParams) -> Perm:
    r, side = params.r, params.side
    queues: dict[tuple[str, ...], deque] = {}
    for idx, typ in enumerate(per_path):
        queues.setdefault(typ, deque()).append(idx)
    type_order = sorted(queues)
    t_idx = 0
    cell_owner: dict[tuple[int, int], int] = {}

    def place(path_idx: int, typ: tuple[str, ...], i: int, j: int) -> None:
        v = path_idx * r + 1
        cell_owner[(i, j)] = v
        for lab in typ:
            if lab == "a":
                j += 1
            else:
                i += 1
            v += 1
            cell_owner[(i, j)] = v

    for band_start in range(1, 2 * side, r):
        while t_idx < len(type_order) and not queues[type_order[t_idx]]:
            t_idx += 1
        if t_idx == len(type_order):
            break
        band_type = type_order[t_idx]
        i_lo = max(1, band_start + 1 - side)
        i_hi = min(side, band_start)
        pos = 0
        while pos <= i_hi - i_lo:
            while t_idx < len(type_order) and not queues[type_order[t_idx]]:
                t_idx += 1
            if t_idx == len(type_order):
                break
            typ = type_order[t_idx]
            if typ != band_type:
                # leave a gap so staircases of different shapes cannot meet
                pos += r - 1
                band_type = typ
                continue
            i = i_lo + pos
            j = band_start + 1 - i
            down = sum(1 for lab in typ if lab == "b")
            right = len(typ) - down
            if i + down <= side and j + right <= side:
                place(queues[typ].popleft(), typ, i, j)
            pos += 1

    if any(queues.values()):
        raise RuntimeError("placement ran out of room; feasibility violated")

    filler = params.path_count * r
    seq = []
    for i in range(1, side + 1):
        for j in range(1, side + 1):
            v = cell_owner.get((i, j))
            if v is None:
                filler += 1
                v = filler
            seq.append(v)
    return tuple(seq)
