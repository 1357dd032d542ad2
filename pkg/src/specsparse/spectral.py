"""Laplacian spectra, the Moore-Penrose pseudoinverse and effective resistance."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .graph_core import Graph, connected_components, laplacian

RANK_RTOL = 1e-9
SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # column i pairs with values[i]


@dataclass(frozen=True)
class ResistanceTable:
    """Effective resistance of each edge, aligned with ``Graph.edges``."""

    edges: tuple[tuple[int, int], ...]
    r: np.ndarray
    rank_tolerance: float

    def to_csv(self, labels=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "r"])
        for (u, v), r in zip(self.edges, self.r.tolist()):
            if labels is not None:
                u, v = labels[u], labels[v]
            w.writerow([u, v, repr(r)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, rank_tolerance: float = float("nan")) -> "ResistanceTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        edges = tuple((int(row["u"]), int(row["v"])) for row in rows)
        r = np.array([float(row["r"]) for row in rows], dtype=np.float64)
        return cls(edges, r, rank_tolerance)


@dataclass(frozen=True)
class EpsilonReport:
    epsilon: float | None
    null_space_mismatch: bool

    @property
    def defined(self) -> bool:
        return self.epsilon is not None


def _check_symmetric(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if mat.size and np.max(np.abs(mat - mat.T)) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    return mat


def eigendecompose(lap: np.ndarray) -> Spectrum:
    lap = _check_symmetric(lap)
    if lap.shape[0] == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)))
    values, vectors = np.linalg.eigh(lap)
    return Spectrum(values, vectors)


def rank_tolerance(values: np.ndarray) -> float:
    lam_max = float(np.max(np.abs(values))) if values.size else 0.0
    return RANK_RTOL * lam_max


def _pinv_from_spectrum(spec: Spectrum) -> tuple[np.ndarray, float]:
    tau = rank_tolerance(spec.values)
    keep = spec.values > tau
    v = spec.vectors[:, keep]
    return (v / spec.values[keep]) @ v.T, tau


def pseudoinverse(lap: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse of a symmetric PSD matrix via its eigenbasis.

    Eigenvalues at or below ``1e-9 * lambda_max`` are treated as zero.
    """
    pinv, _ = _pinv_from_spectrum(eigendecompose(lap))
    return 0.5 * (pinv + pinv.T)


def _pair_resistance(pinv: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    diag = np.diagonal(pinv)
    # elementwise per pair, so the result does not depend on chunking
    return diag[u] + diag[v] - 2.0 * pinv[u, v]


def effective_resistance(g: Graph) -> ResistanceTable:
    spec = eigendecompose(laplacian(g))
    pinv, tau = _pinv_from_spectrum(spec)
    pinv = 0.5 * (pinv + pinv.T)
    e = g.edge_array()
    r = _pair_resistance(pinv, e[:, 0], e[:, 1]) if g.m else np.zeros(0)
    return ResistanceTable(g.edges, r, tau)


def commute_distance(g: Graph, u: int, v: int) -> float:
    """Expected round-trip time of a random walk between ``u`` and ``v``.

    Equals ``2 * m_c * r_uv`` where ``m_c`` counts the edges of the component
    holding both vertices (``m_c == m`` for connected graphs).
    """
    count, label = connected_components(g)
    if label[u] != label[v]:
        raise ValueError(f"vertices {u} and {v} lie in different components")
    if u == v:
        return 0.0
    pinv = pseudoinverse(laplacian(g))
    r = float(_pair_resistance(pinv, np.array([u]), np.array([v]))[0])
    m_c = sum(1 for a, _ in g.edges if label[a] == label[u])
    return 2.0 * m_c * r


def spectral_epsilon(g: Graph, g_sub: Graph) -> EpsilonReport:
    """Smallest epsilon with (1-e) x'L'x <= x'Lx <= (1+e) x'L'x for all x.

    Both graphs must share the vertex set. The quotient x'Lx / x'L'x is only
    meaningful off the common null space; if ``g_sub`` splits a component of
    ``g`` its null space is larger and no finite epsilon exists.
    """
    if g.n != g_sub.n:
        raise ValueError(f"vertex sets differ: {g.n} vs {g_sub.n} vertices")
    if not set(g_sub.edges) <= set(g.edges):
        raise ValueError("g_sub must be a subgraph of g")
    c_full, _ = connected_components(g)
    c_sub, _ = connected_components(g_sub)
    if c_sub > c_full:
        return EpsilonReport(None, True)
    lap = laplacian(g)
    lap_sub = laplacian(g_sub)
    spec = eigendecompose(lap)
    basis = spec.vectors[:, spec.values > rank_tolerance(spec.values)]
    if basis.shape[1] == 0:
        return EpsilonReport(0.0, False)
    a = basis.T @ lap @ basis
    b = basis.T @ lap_sub @ basis
    mu = scipy.linalg.eigh(0.5 * (a + a.T), 0.5 * (b + b.T), eigvals_only=True)
    eps = max(float(mu[-1]) - 1.0, 1.0 - float(mu[0]), 0.0)
    return EpsilonReport(eps, False)


# ------------------------------------------------------------------ caching

_MEMORY_CACHE: dict[str, ResistanceTable] = {}


def cached_effective_resistance(g: Graph, cache_dir: str | Path | None = None) -> ResistanceTable:
    """``effective_resistance`` memoised in-process and on disk.

    The disk cache lives in ``cache_dir`` or ``$SPARSIFY_CACHE_DIR`` and is
    keyed by the graph's content hash.
    """
    key = g.content_hash()
    if key in _MEMORY_CACHE:
        return _MEMORY_CACHE[key]
    cache_dir = cache_dir or os.environ.get("SPARSIFY_CACHE_DIR")
    path = Path(cache_dir) / f"resistance-{key}.csv" if cache_dir else None
    if path is not None and path.exists():
        table = ResistanceTable.from_csv(path.read_text())
        if table.edges != g.edges:
            table = None
    else:
        table = None
    if table is None:
        table = effective_resistance(g)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}")
            tmp.write_text(table.to_csv())
            tmp.replace(path)
    _MEMORY_CACHE[key] = table
    return table
