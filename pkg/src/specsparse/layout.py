"""Seeded force-directed layouts.

``layout_fr`` is a Fruchterman-Reingold spring-electrical layout with linear
cooling; ``layout_multilevel`` wraps it in a matching-based coarsening
hierarchy for larger graphs. Both lay out connected components separately
and shelf-pack them, so sparsified proxies with many pieces stay readable.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

from .graph_core import Graph, connected_components

# above this many vertices, repulsion is restricted to pairs closer than 2k
EXACT_REPULSION_MAX = 600
COARSEST_SIZE = 50
REFINE_ITERATIONS = 60
INITIAL_TEMPERATURE = 0.1
PACK_GAP = 0.25


@dataclass(frozen=True)
class Drawing:
    positions: np.ndarray
    labels: tuple[str, ...]
    graph_ref: str
    seed: int
    algorithm: str

    @property
    def n(self) -> int:
        return len(self.labels)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "x", "y"])
        for lab, (x, y) in zip(self.labels, self.positions.tolist()):
            w.writerow([lab, repr(x), repr(y)])
        return buf.getvalue()

    def transformed(self, scale: float = 1.0, angle: float = 0.0, shift=(0.0, 0.0)) -> "Drawing":
        c, s = np.cos(angle), np.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        pos = scale * self.positions @ rot.T + np.asarray(shift, dtype=np.float64)
        return Drawing(pos, self.labels, self.graph_ref, self.seed, self.algorithm)


def read_drawing(path: str | Path) -> Drawing:
    path = Path(path)
    labels, pos = [], []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["label", "x", "y"]:
            raise ValueError(f"{path}: line 1: expected header 'label,x,y'")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise ValueError(f"{path}: line {lineno}: expected 3 fields")
            try:
                x, y = float(row[1]), float(row[2])
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: bad coordinate") from None
            if not (np.isfinite(x) and np.isfinite(y)):
                raise ValueError(f"{path}: line {lineno}: non-finite coordinate")
            labels.append(row[0])
            pos.append((x, y))
    return Drawing(np.array(pos, dtype=np.float64).reshape(-1, 2), tuple(labels), "", 0, "external")


def natural_length(n: int) -> float:
    return 1.0 / np.sqrt(max(n, 1))


def layout_energy(edges: np.ndarray, pos: np.ndarray, k: float) -> float:
    """Potential whose negative gradient is the FR force field.

    Springs contribute ``d^3 / 3k`` per edge, repulsion ``-k^2 ln d`` per pair.
    """
    energy = 0.0
    if len(edges):
        d = np.linalg.norm(pos[edges[:, 0]] - pos[edges[:, 1]], axis=1)
        energy += float(np.sum(d ** 3)) / (3 * k)
    iu = np.triu_indices(len(pos), k=1)
    dd = np.linalg.norm(pos[iu[0]] - pos[iu[1]], axis=1)
    energy -= k * k * float(np.sum(np.log(np.maximum(dd, 1e-300))))
    return energy


def _repulsion(pos: np.ndarray, k: float) -> np.ndarray:
    n = len(pos)
    if n <= EXACT_REPULSION_MAX:
        dx = pos[:, 0:1] - pos[:, 0]
        dy = pos[:, 1:2] - pos[:, 1]
        d2 = dx * dx + dy * dy
        np.fill_diagonal(d2, np.inf)
        np.maximum(d2, 1e-18, out=d2)
        f = (k * k) / d2
        return np.column_stack(((dx * f).sum(axis=1), (dy * f).sum(axis=1)))
    pairs = cKDTree(pos).query_pairs(2 * k, output_type="ndarray")
    disp = np.zeros_like(pos)
    if len(pairs):
        delta = pos[pairs[:, 0]] - pos[pairs[:, 1]]
        d2 = np.maximum(np.sum(delta * delta, axis=1), 1e-18)
        f = delta * ((k * k) / d2)[:, None]
        np.add.at(disp, pairs[:, 0], f)
        np.add.at(disp, pairs[:, 1], -f)
    return disp


def _fr(pos: np.ndarray, edges: np.ndarray, k: float, iterations: int, t0: float) -> np.ndarray:
    pos = pos.copy()
    for i in range(iterations):
        disp = _repulsion(pos, k)
        if len(edges):
            delta = pos[edges[:, 0]] - pos[edges[:, 1]]
            dist = np.sqrt(np.sum(delta * delta, axis=1))
            f = delta * (dist / k)[:, None]
            np.add.at(disp, edges[:, 0], -f)
            np.add.at(disp, edges[:, 1], f)
        length = np.sqrt(np.sum(disp * disp, axis=1))
        t = t0 * (1.0 - i / iterations)
        scale = np.minimum(length, t) / np.maximum(length, 1e-300)
        pos += disp * scale[:, None]
    return pos


def _separate_coincident(pos: np.ndarray, rng: np.random.Generator, k: float) -> np.ndarray:
    for _ in range(100):
        _, first, inverse = np.unique(pos, axis=0, return_index=True, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        dup = first[inverse] != np.arange(len(pos))
        if not dup.any():
            break
        pos[dup] += rng.uniform(-1e-6 * k, 1e-6 * k, size=(int(dup.sum()), 2))
    return pos


def _component_parts(g: Graph):
    count, label = connected_components(g)
    parts = [np.flatnonzero(label == c) for c in range(count)]
    parts.sort(key=lambda vs: (-len(vs), int(vs[0])))
    e = g.edge_array()
    comp_edges = []
    for vs in parts:
        local = np.full(g.n, -1, dtype=np.int64)
        local[vs] = np.arange(len(vs))
        mask = local[e[:, 0]] >= 0 if len(e) else np.zeros(0, dtype=bool)
        comp_edges.append(local[e[mask]] if len(e) else np.zeros((0, 2), dtype=np.int64))
    return parts, comp_edges


def _pack(blocks: list[np.ndarray], k: float) -> list[np.ndarray]:
    """Shelf-pack component drawings left to right, wrapping rows."""
    boxes = []
    for b in blocks:
        lo = b.min(axis=0)
        boxes.append((b - lo, b.max(axis=0) - lo))
    diam = [max(float(ext.max()), k) for _, ext in boxes]
    gaps = [PACK_GAP * d + k for d in diam]
    total = sum((ext[0] + gap) * (ext[1] + gap) for (_, ext), gap in zip(boxes, gaps))
    row_limit = max(np.sqrt(total) * 1.2, max(ext[0] for _, ext in boxes))
    out = []
    x = y = row_h = 0.0
    for (b, ext), gap in zip(boxes, gaps):
        if x > 0 and x + ext[0] > row_limit:
            x, y, row_h = 0.0, y + row_h, 0.0
        out.append(b + np.array([x, y]))
        x += ext[0] + gap
        row_h = max(row_h, ext[1] + gap)
    return out


def _layout_components(g: Graph, seed: int, place) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    init = rng.random((g.n, 2))
    k = natural_length(g.n)
    if g.n == 1:
        return np.array([[0.5, 0.5]])
    parts, comp_edges = _component_parts(g)
    blocks = []
    for vs, ce in zip(parts, comp_edges):
        if len(vs) == 1:
            blocks.append(np.array([[0.5, 0.5]]) * np.sqrt(1.0 / g.n))
            continue
        side = np.sqrt(len(vs) / g.n)
        blocks.append(place(init[vs] * side, ce, k, side, rng))
    if len(parts) == 1:
        pos = blocks[0]
    else:
        pos = np.empty((g.n, 2))
        for vs, b in zip(parts, _pack(blocks, k)):
            pos[vs] = b
    return _separate_coincident(pos, rng, k)


def layout_fr(g: Graph, seed: int = 0, iterations: int | None = None) -> Drawing:
    """Fruchterman-Reingold layout, ``4 * n`` iterations unless given.

    Initial positions are uniform in the unit square; a disconnected graph
    gets one square per component, scaled to its share of the vertices.
    """
    if g.n == 0:
        raise ValueError("cannot lay out an empty graph")

    def place(init, edges, k, side, rng):
        its = iterations if iterations is not None else 4 * len(init)
        return _fr(init, edges, k, its, INITIAL_TEMPERATURE * side)

    pos = _layout_components(g, seed, place)
    return Drawing(pos, g.labels, g.content_hash(), seed, "fr")


# ----------------------------------------------------------------- multilevel


def coarsen(n: int, edges: np.ndarray, weights: np.ndarray | None = None):
    """One round of heavy-edge matching.

    Vertices are visited in index order; each unmatched vertex is merged with
    its unmatched neighbour of largest edge weight (smallest index on ties).
    Returns ``(parent, n_coarse, coarse_edges, coarse_weights)``.
    """
    if weights is None:
        weights = np.ones(len(edges))
    adj: list[dict[int, float]] = [dict() for _ in range(n)]
    for (u, v), w in zip(edges.tolist(), weights.tolist()):
        adj[u][v] = adj[u].get(v, 0.0) + w
        adj[v][u] = adj[v].get(u, 0.0) + w
    parent = np.full(n, -1, dtype=np.int64)
    nc = 0
    for u in range(n):
        if parent[u] >= 0:
            continue
        best, best_w = -1, -np.inf
        for v in sorted(adj[u]):
            if parent[v] < 0 and v != u and adj[u][v] > best_w:
                best, best_w = v, adj[u][v]
        parent[u] = nc
        if best >= 0:
            parent[best] = nc
        nc += 1
    cw: dict[tuple[int, int], float] = {}
    for (u, v), w in zip(edges.tolist(), weights.tolist()):
        a, b = int(parent[u]), int(parent[v])
        if a != b:
            key = (min(a, b), max(a, b))
            cw[key] = cw.get(key, 0.0) + w
    keys = sorted(cw)
    ce = np.array(keys, dtype=np.int64).reshape(-1, 2)
    return parent, nc, ce, np.array([cw[e] for e in keys])


def _multilevel_place(init, edges, k, side, rng, iterations):
    n = len(init)
    if n <= COARSEST_SIZE:
        its = iterations if iterations is not None else 4 * n
        return _fr(init, edges, k, its, INITIAL_TEMPERATURE * side)
    levels = []
    cur_n, cur_e, cur_w = n, edges, None
    while cur_n > COARSEST_SIZE:
        parent, nc, ce, cw = coarsen(cur_n, cur_e, cur_w)
        if nc > 0.95 * cur_n:
            break
        levels.append((cur_n, cur_e, parent))
        cur_n, cur_e, cur_w = nc, ce, cw
    # coarse levels keep the same footprint, so k grows as vertices merge
    k_c = k * np.sqrt(n / cur_n)
    pos = _fr(rng.random((cur_n, 2)) * side, cur_e, k_c, 4 * cur_n, INITIAL_TEMPERATURE * side)
    for fine_n, fine_e, parent in reversed(levels):
        k_f = k * np.sqrt(n / fine_n)
        pos = pos[parent] + rng.uniform(-0.1 * k_f, 0.1 * k_f, size=(fine_n, 2))
        its = iterations if iterations is not None else REFINE_ITERATIONS
        pos = _fr(pos, fine_e, k_f, its, 2.0 * k_f)
    return pos


def layout_multilevel(g: Graph, seed: int = 0, iterations: int | None = None) -> Drawing:
    """Multilevel FR: coarsen to at most 50 vertices, lay out, prolong and refine.

    Graphs with at most 50 vertices get exactly ``layout_fr``.
    """
    if g.n <= COARSEST_SIZE:
        d = layout_fr(g, seed, iterations)
        return Drawing(d.positions, d.labels, d.graph_ref, seed, "multilevel")
    if g.n == 0:
        raise ValueError("cannot lay out an empty graph")

    def place(init, edges, k, side, rng):
        return _multilevel_place(init, edges, k, side, rng, iterations)

    pos = _layout_components(g, seed, place)
    return Drawing(pos, g.labels, g.content_hash(), seed, "multilevel")


LAYOUTS = {"fr": layout_fr, "multilevel": layout_multilevel}


def layout(g: Graph, algorithm: str = "fr", seed: int = 0, iterations: int | None = None) -> Drawing:
    try:
        fn = LAYOUTS[algorithm]
    except KeyError:
        raise ValueError(f"unknown layout {algorithm!r}; expected one of {sorted(LAYOUTS)}") from None
    if iterations is not None and iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    return fn(g, seed, iterations)
