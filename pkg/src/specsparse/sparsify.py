"""Edge sparsifiers: uniform random edges (RE), resistance-weighted sampling
(SSS) and deterministic top-resistance selection (DSS)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph_core import Graph, induced_by_edges, write_edge_list
from .spectral import ResistanceTable, cached_effective_resistance

METHODS = ("RE", "SSS", "DSS")

# resistances closer than this are ranked as ties by DSS
TIE_DECIMALS = 9


@dataclass(frozen=True)
class Sparsification:
    method: str
    m_prime: int
    seed: int | None
    selected: tuple[tuple[int, int], ...]
    source_m: int

    @property
    def relative_density(self) -> float:
        return self.m_prime / self.source_m

    def sidecar(self, source: Graph) -> dict:
        return {
            "method": self.method,
            "m_prime": self.m_prime,
            "seed": self.seed,
            "source_hash": source.content_hash(),
        }


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & ((1 << 64) - 1)))


def _check_m_prime(g: Graph, m_prime: int) -> int:
    m_prime = int(m_prime)
    if not 1 <= m_prime <= g.m:
        raise ValueError(f"m_prime must be in [1, {g.m}], got {m_prime}")
    return m_prime


def _check_table(g: Graph, r: ResistanceTable) -> np.ndarray:
    if r.edges != g.edges:
        raise ValueError("resistance table is not aligned with the graph's edges")
    if np.any(r.r <= 0):
        raise ValueError("resistances must be strictly positive")
    return r.r


def sample_re(g: Graph, m_prime: int, seed: int) -> Sparsification:
    """Uniform sample of ``m_prime`` edges without replacement."""
    m_prime = _check_m_prime(g, m_prime)
    rng = _rng(seed)
    order = list(range(g.m))
    # partial Fisher-Yates: the first m_prime slots end up uniformly drawn
    for i in range(m_prime):
        j = int(rng.integers(i, g.m))
        order[i], order[j] = order[j], order[i]
    chosen = sorted(order[:m_prime])
    return Sparsification("RE", m_prime, seed, tuple(g.edges[i] for i in chosen), g.m)


def sample_sss(g: Graph, r: ResistanceTable, m_prime: int, seed: int) -> Sparsification:
    """Resistance-proportional sampling without replacement.

    Each edge gets the key ``-ln(U) / r_e`` and the ``m_prime`` smallest keys
    win, so the first pick has probability ``r_e / sum(r)`` and later picks
    follow the same law over the remaining edges.
    """
    weights = _check_table(g, r)
    m_prime = _check_m_prime(g, m_prime)
    u = _rng(seed).random(g.m)
    keys = -np.log1p(-u) / weights  # 1-U is uniform on (0, 1]
    chosen = np.sort(np.argsort(keys, kind="stable")[:m_prime])
    return Sparsification("SSS", m_prime, seed, tuple(g.edges[i] for i in chosen), g.m)


def select_dss(g: Graph, r: ResistanceTable, m_prime: int) -> Sparsification:
    """The ``m_prime`` edges of largest resistance, ties in edge order."""
    weights = _check_table(g, r)
    m_prime = _check_m_prime(g, m_prime)
    ranked = np.lexsort((np.arange(g.m), -np.round(weights, TIE_DECIMALS)))
    chosen = np.sort(ranked[:m_prime])
    return Sparsification("DSS", m_prime, None, tuple(g.edges[i] for i in chosen), g.m)


def target_edge_count(g: Graph, density: float) -> int:
    if not 0 < density <= 1:
        raise ValueError(f"density must be in (0, 1], got {density}")
    return max(1, int(round(density * g.m)))


def sparsify(g: Graph, method: str, density: float, seed: int = 0,
             resistance: ResistanceTable | None = None) -> tuple[Sparsification, Graph]:
    """Sparsify ``g`` to the given relative density and return the proxy."""
    method = method.upper()
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    m_prime = target_edge_count(g, density)
    if method == "RE":
        sp = sample_re(g, m_prime, seed)
    else:
        table = resistance if resistance is not None else cached_effective_resistance(g)
        if method == "SSS":
            sp = sample_sss(g, table, m_prime, seed)
        else:
            sp = select_dss(g, table, m_prime)
    return sp, induced_by_edges(g, sp.selected)


def write_sparsification(g: Graph, sp: Sparsification, path: str | Path) -> None:
    """Write the proxy edge list and a ``<path>.json`` sidecar."""
    path = Path(path)
    proxy = induced_by_edges(g, sp.selected)
    write_edge_list(proxy, path)
    Path(str(path) + ".json").write_text(json.dumps(sp.sidecar(g), indent=2, sort_keys=True) + "\n")
