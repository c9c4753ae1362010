"""Exact P(n, k) at small n: maximum clique over the compatibility graph.

Candidates are Hamiltonian-path representatives (the orientation starting
at the smaller endpoint), adjacency is the k-neighbor separation relation,
and the clique search is a branch-and-bound with greedy-coloring upper
bounds over Python-int bitsets.  Single-threaded and fully deterministic
for fixed inputs; a time limit turns the result into a best-found witness
with proven_optimal=False.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations

from .bounds import exact_formulas
from .perms import Perm, neighbor_pairs, separated_pairs, verify_family


@dataclass(frozen=True)
class CompatibilityGraph:
    n: int
    k: int
    candidates: tuple[Perm, ...]
    adjacency: tuple[int, ...]  # bitset rows, row i bit j = separated(i, j)


def build_graph(n: int, k: int) -> CompatibilityGraph:
    """All n!/2 path representatives with full bitset adjacency.

    Representatives are listed in lexicographic order.  Reversal
    deduplication is safe for every k: for k >= 3 a path and its reverse
    are never separated, and for k = 2 they are the same path.
    """
    if not 3 <= n <= 8:
        raise ValueError("n must be in 3..8 (candidate-count guard)")
    if not 2 <= k <= n:
        raise ValueError(f"k must satisfy 2 <= k <= {n}")
    cands = [p for p in permutations(range(1, n + 1)) if p[0] < p[-1]]
    nb = [neighbor_pairs(p) for p in cands]
    sp = [separated_pairs(p, k) for p in cands]
    m = len(cands)
    rows = [0] * m
    for i in range(m):
        nbi, spi = nb[i], sp[i]
        for j in range(i + 1, m):
            if not nbi.isdisjoint(sp[j]) or not nb[j].isdisjoint(spi):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return CompatibilityGraph(n, k, tuple(cands), tuple(rows))


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    proven_optimal: bool
    nodes_explored: int
    wall_time: float

    def to_json(self, *, include_wall_time: bool = True) -> dict:
        out = {
            "size": self.size,
            "witness": list(self.witness),
            "proven_optimal": self.proven_optimal,
            "nodes_explored": self.nodes_explored,
        }
        if include_wall_time:
            out["wall_time"] = self.wall_time
        return out


class _Timeout(Exception):
    pass


def _degeneracy_order(m: int, adj: list[int]) -> list[int]:
    """Smallest-last vertex order, lowest index breaking ties."""
    deg = [row.bit_count() for row in adj]
    alive = set(range(m))
    order = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        alive.remove(v)
        order.append(v)
        row = adj[v]
        while row:
            lsb = row & -row
            u = lsb.bit_length() - 1
            row ^= lsb
            if u in alive:
                deg[u] -= 1
    order.reverse()  # highest core first: gets the low bit positions
    return order


def _color_sort(p_bits: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set; colors come out ascending."""
    order: list[int] = []
    colors: list[int] = []
    color = 0
    rest = p_bits
    while rest:
        color += 1
        q = rest
        while q:
            lsb = q & -q
            v = lsb.bit_length() - 1
            order.append(v)
            colors.append(color)
            rest ^= lsb
            q &= ~adj[v]
            q &= rest
    return order, colors


def max_clique(graph: CompatibilityGraph,
               time_limit: float | None = None) -> CliqueResult:
    """Branch-and-bound maximum clique; exact unless the time limit hits."""
    m = len(graph.candidates)
    start = time.monotonic()
    deadline = start + time_limit if time_limit is not None else None

    order = _degeneracy_order(m, list(graph.adjacency))
    pos = [0] * m
    for new, old in enumerate(order):
        pos[old] = new
    adj = [0] * m
    for old in range(m):
        row = graph.adjacency[old]
        new_row = 0
        while row:
            lsb = row & -row
            new_row |= 1 << pos[lsb.bit_length() - 1]
            row ^= lsb
        adj[pos[old]] = new_row

    best_size = 0
    best_bits = 0
    nodes = 0

    def expand(size: int, r_bits: int, p_bits: int) -> None:
        nonlocal best_size, best_bits, nodes
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 \
                and time.monotonic() > deadline:
            raise _Timeout
        if not p_bits:
            if size > best_size:
                best_size = size
                best_bits = r_bits
            return
        cand_order, cand_colors = _color_sort(p_bits, adj)
        for idx in range(len(cand_order) - 1, -1, -1):
            if size + cand_colors[idx] <= best_size:
                return
            v = cand_order[idx]
            bit = 1 << v
            expand(size + 1, r_bits | bit, p_bits & adj[v])
            p_bits ^= bit

    try:
        expand(0, 0, (1 << m) - 1)
        optimal = True
    except _Timeout:
        optimal = False

    witness = []
    bits = best_bits
    while bits:
        lsb = bits & -bits
        witness.append(order[lsb.bit_length() - 1])
        bits ^= lsb
    return CliqueResult(
        size=best_size,
        witness=tuple(sorted(witness)),
        proven_optimal=optimal,
        nodes_explored=nodes,
        wall_time=time.monotonic() - start,
    )


def witness_family(graph: CompatibilityGraph, result: CliqueResult) -> list[Perm]:
    return [graph.candidates[i] for i in result.witness]


def p_table(n_max: int, k_rule="all",
            time_limit: float | None = None) -> list[dict]:
    """Solve a grid of (n, k) cells and cross-check every covered closed form.

    k_rule is "all" (2 <= k <= n), "diagonal" (k = n), or a fixed integer.
    A disagreement between the solver and a covered formula is a hard error,
    as is a witness that fails verification.
    """
    rows = []
    for n in range(3, n_max + 1):
        if k_rule == "all":
            ks = range(2, n + 1)
        elif k_rule == "diagonal":
            ks = [n]
        else:
            k = int(k_rule)
            ks = [k] if k <= n else []
        for k in ks:
            graph = build_graph(n, k)
            result = max_clique(graph, time_limit)
            if not result.proven_optimal:
                raise RuntimeError(f"time limit hit at (n={n}, k={k})")
            report = verify_family(witness_family(graph, result), k)
            if not report.ok:
                raise RuntimeError(f"witness fails verification at ({n},{k})")
            try:
                cell = exact_formulas(n, k)
            except ValueError:
                cell = None
            if (n, k) == (3, 2):
                # the (n-1)! closed form undercounts here: all three paths
                # of K_3 pairwise share an edge, so the true value is 3
                if result.size != 3:
                    raise RuntimeError("solver lost the K_3 triangle family")
            elif cell is not None and not cell.low <= result.size <= cell.high:
                raise RuntimeError(
                    f"solver found {result.size} at (n={n}, k={k}) but the "
                    f"closed form gives [{cell.low}, {cell.high}]")
            rows.append({"n": n, "k": k, "value": result.size,
                         "witness": list(result.witness)})
    return rows
