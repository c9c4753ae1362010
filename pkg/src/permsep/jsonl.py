"""Stable file formats: family JSONL, labelled-graph JSON, stats JSON.

A family file holds one JSON array of vertex ids per line, optionally
preceded by a single header object.  Serialization is canonical -- fixed
key order, compact separators -- so identical inputs produce identical
bytes.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Optional, Sequence

from .labelled import Grid, LabelledGraph
from .perms import Perm, as_permutation


def dumps(obj) -> str:
    """Compact JSON with the dict's own (deterministic) key order."""
    return json.dumps(obj, separators=(",", ":"))


def family_header(construction: str, params: dict, n: int, k: int,
                  count: int, vertices: Sequence[int]) -> dict:
    return {
        "construction": construction,
        "params": params,
        "n": n,
        "k": k,
        "count": count,
        "vertices": sorted(vertices),
    }


def write_family(fp: IO[str], perms: Iterable[Perm],
                 header: Optional[dict] = None) -> None:
    if header is not None:
        fp.write(dumps(header) + "\n")
    for p in perms:
        fp.write(dumps(list(p)) + "\n")


def read_family(fp: IO[str]) -> tuple[Optional[dict], list[Perm]]:
    """Parse a family file; the header object is optional."""
    header: Optional[dict] = None
    perms: list[Perm] = []
    for lineno, line in enumerate(fp, start=1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if isinstance(obj, dict):
            if header is not None or perms:
                raise ValueError(f"line {lineno}: unexpected header object")
            header = obj
        elif isinstance(obj, list):
            perms.append(as_permutation(obj))
        else:
            raise ValueError(f"line {lineno}: expected array or object")
    return header, perms


def graph_to_json(w: LabelledGraph) -> dict:
    return {
        "isolated": w.isolated,
        "grids": [
            {"w": g.width, "h": g.height,
             "cells": [list(row) for row in g.cells]}
            for g in w.grids
        ],
        "extra_edges": [[u, v, lab] for u, v, lab in w.extra_edges],
    }


def graph_from_json(data: dict) -> LabelledGraph:
    grids = []
    for spec in data.get("grids", ()):
        grid = Grid(tuple(tuple(row) for row in spec["cells"]))
        if grid.width != spec.get("w", grid.width) \
                or grid.height != spec.get("h", grid.height):
            raise ValueError("grid dimensions disagree with cells")
        grids.append(grid)
    return LabelledGraph(
        tuple(grids),
        data.get("isolated"),
        tuple((u, v, lab) for u, v, lab in data.get("extra_edges", ())),
    )
