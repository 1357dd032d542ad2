"""Proximity ("shape") graphs on planar point sets: EMST, RNG and Gabriel graph.

Conventions: the Gabriel test uses the closed diametral disk, so a third
point on the circle removes the edge; the RNG test uses the strict lune.
Exactly coincident points are collapsed to one representative, the graph is
built on the distinct points, and every duplicate then receives its
representative's neighbourhood and is joined to its twins.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.spatial import Delaunay, QhullError

KINDS = ("GG", "RNG", "EMST")
BRUTE_FORCE_MAX = 120
# squared distances within this relative gap are ties (floats cannot hold an
# exact equilateral triangle or cocircular quadruple)
TIE_RTOL = 1e-12
_CHUNK = 256


@dataclass(frozen=True)
class ShapeGraph:
    kind: str
    n: int
    edges: tuple[tuple[int, int], ...]

    def neighbours(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def to_text(self, labels=None) -> str:
        lines = [f"# kind: {self.kind}\n", f"# n: {self.n}\n"]
        for u, v in self.edges:
            if labels is not None:
                u, v = labels[u], labels[v]
            lines.append(f"{u} {v}\n")
        return "".join(lines)


def as_points(points) -> np.ndarray:
    p = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def _all_pairs(n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    return np.column_stack(iu).astype(np.int64)


def _delaunay_edges(p: np.ndarray) -> np.ndarray | None:
    try:
        tri = Delaunay(p)
    except (QhullError, ValueError):
        return None
    s = tri.simplices
    # Qhull drops coplanar input points; fall back if any point is missing
    if len(np.unique(s)) != len(p):
        return None
    e = np.concatenate([s[:, [0, 1]], s[:, [1, 2]], s[:, [0, 2]]])
    e.sort(axis=1)
    return np.unique(e, axis=0)


def _candidates(p: np.ndarray, method: str) -> np.ndarray:
    n = len(p)
    if method == "brute" or (method == "auto" and n <= BRUTE_FORCE_MAX) or n < 3:
        return _all_pairs(n)
    e = _delaunay_edges(p)
    return _all_pairs(n) if e is None else e


def _filter_edges(p: np.ndarray, cand: np.ndarray, kind: str) -> np.ndarray:
    if len(cand) == 0:
        return cand
    keep = np.ones(len(cand), dtype=bool)
    idx = np.arange(len(p))
    for start in range(0, len(cand), _CHUNK):
        c = cand[start:start + _CHUNK]
        a, b = p[c[:, 0]], p[c[:, 1]]
        dab = np.sum((a - b) ** 2, axis=1)[:, None]
        dac = np.sum((a[:, None, :] - p[None, :, :]) ** 2, axis=2)
        dbc = np.sum((b[:, None, :] - p[None, :, :]) ** 2, axis=2)
        if kind == "GG":
            # Thales: c is inside or on the circle with diameter ab
            hit = dac + dbc <= dab * (1 + TIE_RTOL)
        else:
            hit = np.maximum(dac, dbc) < dab * (1 - TIE_RTOL)
        hit[(idx[None, :] == c[:, :1]) | (idx[None, :] == c[:, 1:])] = False
        keep[start:start + _CHUNK] = ~hit.any(axis=1)
    return cand[keep]


def _prim(p: np.ndarray) -> np.ndarray:
    n = len(p)
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = np.sum((p - p[0]) ** 2, axis=1)
    parent = np.zeros(n, dtype=np.int64)
    best[0] = np.inf
    edges = []
    for _ in range(n - 1):
        v = int(np.argmin(best))
        edges.append((min(v, parent[v]), max(v, parent[v])))
        in_tree[v] = True
        best[v] = np.inf
        d = np.sum((p - p[v]) ** 2, axis=1)
        closer = (d < best) & ~in_tree
        best[closer] = d[closer]
        parent[closer] = v
    return np.array(sorted(edges), dtype=np.int64)


def _expand_duplicates(inverse: np.ndarray, edges: np.ndarray) -> tuple[tuple[int, int], ...]:
    members: dict[int, list[int]] = {}
    for i, g in enumerate(inverse.tolist()):
        members.setdefault(g, []).append(i)
    out = set()
    for a, b in edges.tolist():
        for u in members[a]:
            for v in members[b]:
                out.add((min(u, v), max(u, v)))
    for group in members.values():
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                out.add((u, v))
    return tuple(sorted(out))


def _build(points, kind: str, method: str) -> ShapeGraph:
    p = as_points(points)
    n = len(p)
    uniq, first, inverse = np.unique(p, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    if len(uniq) == n:
        q, dup = p, False
    else:
        # keep representatives in original index order so tie-breaks are stable
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        q, inverse, dup = uniq[order], rank[inverse], True
    if kind == "EMST":
        e = _prim(q)
    else:
        e = _filter_edges(q, _candidates(q, method), kind)
    if dup:
        return ShapeGraph(kind, n, _expand_duplicates(inverse, e))
    return ShapeGraph(kind, n, tuple(map(tuple, e.tolist())))


def gabriel(points, method: str = "auto") -> ShapeGraph:
    """Gabriel graph: ``ab`` is an edge iff the closed disk on diameter ``ab`` is empty."""
    return _build(points, "GG", method)


def rng(points, method: str = "auto") -> ShapeGraph:
    """Relative neighbourhood graph with the strict lune-emptiness rule."""
    return _build(points, "RNG", method)


def emst(points) -> ShapeGraph:
    """Euclidean minimum spanning tree by an O(n^2) Prim scan."""
    return _build(points, "EMST", "auto")


def shape_graph(points, kind: str, method: str = "auto") -> ShapeGraph:
    kind = kind.upper()
    if kind == "GG":
        return gabriel(points, method)
    if kind == "RNG":
        return rng(points, method)
    if kind == "EMST":
        return emst(points)
    raise ValueError(f"unknown shape graph {kind!r}; expected one of {KINDS}")


def write_shape_graph(sg: ShapeGraph, path: str | Path, labels: Iterable[str] | None = None) -> None:
    Path(path).write_text(sg.to_text(None if labels is None else list(labels)))
