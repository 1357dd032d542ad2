"""Undirected simple graphs: construction, edge-list I/O and Laplacians."""
from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Raised when an input file cannot be parsed into a graph."""


Edge = tuple[int, int]


def _canonical_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            continue
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        seen.add((u, v) if u < v else (v, u))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph over dense vertex indices ``0..n-1``.

    ``edges`` is always canonical: ``u < v``, no duplicates, sorted.
    ``labels`` holds the original string identifier of every vertex; induced
    subgraphs keep the labels of the vertices they came from, which is how
    proxy vertices are matched back to the original graph.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "edges", _canonical_edges(self.n, self.edges))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        else:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if len(self.labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.n:
            raise ValueError("vertex labels must be unique")

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` integer array."""
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        if self.m:
            e = self.edge_array()
            np.add.at(deg, e[:, 0], 1)
            np.add.at(deg, e[:, 1], 1)
        return deg

    def neighbours(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.m:
            e = self.edge_array()
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    def content_hash(self) -> str:
        """SHA-256 over the canonical serialization (labels included)."""
        h = hashlib.sha256()
        h.update(f"{self.n}\n".encode())
        h.update("\x1f".join(self.labels).encode())
        h.update(b"\n")
        h.update(self.edge_array().tobytes())
        return h.hexdigest()


# --------------------------------------------------------------------- I/O


def load_edge_list(text: str | bytes | io.IOBase) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` are comments. Tokens are arbitrary
    strings, mapped to dense indices in first-seen order. Self-loops and
    repeated edges are dropped.
    """
    if isinstance(text, bytes):
        text = text.decode()
    elif not isinstance(text, str):
        text = text.read()
        if isinstance(text, bytes):
            text = text.decode()
    index: dict[str, int] = {}
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        tokens = stripped.split()
        if len(tokens) == 1:
            raise GraphFormatError(f"line {lineno}: expected two vertex tokens, got one")
        a, b = tokens[0], tokens[1]
        for t in (a, b):
            if t not in index:
                index[t] = len(index)
        pairs.append((index[a], index[b]))
    if not pairs:
        raise GraphFormatError("no edges")
    return Graph(len(index), pairs, tuple(index))


def read_edge_list(path: str | Path) -> Graph:
    path = Path(path)
    if path.suffix == ".mtx":
        return read_matrix_market(path)
    try:
        return load_edge_list(path.read_text())
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form, one ``u v`` line per edge using the labels."""
    lab = g.labels
    return "".join(f"{lab[u]} {lab[v]}\n" for u, v in g.edges)


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(serialize_edge_list(g))


def read_matrix_market(path: str | Path) -> Graph:
    """Read a coordinate MatrixMarket file as the graph of its off-diagonal pattern."""
    from scipy.io import mmread

    try:
        mat = mmread(str(path))
    except Exception as exc:
        raise GraphFormatError(f"{path}: {exc}") from None
    coo = mat.tocoo() if hasattr(mat, "tocoo") else None
    if coo is None:
        raise GraphFormatError(f"{path}: dense MatrixMarket arrays are not graphs")
    n = max(coo.shape)
    return Graph(n, zip(coo.row.tolist(), coo.col.tolist()), tuple(str(i + 1) for i in range(n)))


# --------------------------------------------------------------- structure


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian ``D - A`` as a dense float matrix.

    Built in integer arithmetic so row sums are exactly zero.
    """
    lap = -g.adjacency()
    lap[np.diag_indices(g.n)] = g.degrees()
    return lap.astype(np.float64)


def connected_components(g: Graph) -> tuple[int, np.ndarray]:
    """Component count and per-vertex labels numbered by first appearance."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    label = np.empty(g.n, dtype=np.int64)
    ids: dict[int, int] = {}
    for u in range(g.n):
        r = find(u)
        if r not in ids:
            ids[r] = len(ids)
        label[u] = ids[r]
    return len(ids), label


def induced_by_edges(g: Graph, es: Iterable[Sequence[int]]) -> Graph:
    """Subgraph made of the edges ``es`` and exactly the vertices they touch.

    Vertices are re-indexed densely in ascending original order; labels are
    inherited from ``g``.
    """
    present = set(g.edges)
    chosen = []
    for u, v in es:
        e = (min(u, v), max(u, v))
        if e not in present:
            raise ValueError(f"edge {e} is not in the graph")
        chosen.append(e)
    verts = sorted({x for e in chosen for x in e})
    remap = {v: i for i, v in enumerate(verts)}
    return Graph(
        len(verts),
        [(remap[u], remap[v]) for u, v in chosen],
        tuple(g.labels[v] for v in verts),
    )


def spanning_subgraph(g: Graph, es: Iterable[Sequence[int]]) -> Graph:
    """Subgraph on the full vertex set of ``g`` with edge set ``es``."""
    present = set(g.edges)
    chosen = [(min(u, v), max(u, v)) for u, v in es]
    missing = [e for e in chosen if e not in present]
    if missing:
        raise ValueError(f"edge {missing[0]} is not in the graph")
    return Graph(g.n, chosen, g.labels)


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component (ties: lowest id)."""
    count, label = connected_components(g)
    if count <= 1:
        return g
    sizes = np.bincount(label)
    keep = int(np.argmax(sizes))
    verts = np.flatnonzero(label == keep).tolist()
    remap = {v: i for i, v in enumerate(verts)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if label[u] == keep]
    return Graph(len(verts), edges, tuple(g.labels[v] for v in verts))


def relative_density(g: Graph, m_prime: int) -> float:
    if g.m == 0:
        raise ValueError("relative density is undefined for a graph without edges")
    if not 0 < m_prime <= g.m:
        raise ValueError(f"m_prime must be in (0, {g.m}], got {m_prime}")
    return m_prime / g.m
