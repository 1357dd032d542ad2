"""Synthetic graphs for the experiment corpus."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .graph_core import Graph, write_edge_list
from .shape import emst, gabriel


@dataclass(frozen=True)
class BlackHoleSpec:
    """Dense cores ("black holes") hung off a sparse connected periphery.

    ``holes`` lists ``(core_size, core_density)`` pairs; every core is joined
    to the periphery by exactly ``attachment_edges`` edges.
    """

    holes: tuple[tuple[int, float], ...]
    periphery_size: int
    periphery_edges: int
    attachment_edges: int = 1
    seed: int = 0

    def validate(self) -> None:
        if not self.holes:
            raise ValueError("holes: at least one core is required")
        for size, dens in self.holes:
            if size < 1:
                raise ValueError(f"core_size must be >= 1, got {size}")
            if not 0 < dens <= 1:
                raise ValueError(f"core_density must be in (0, 1], got {dens}")
            if _core_edge_count(size, dens) < size - 1:
                raise ValueError(
                    f"core_density*core_size*(core_size-1)/2 >= core_size-1 violated "
                    f"for core ({size}, {dens}): core cannot be connected")
        p = self.periphery_size
        if p < 1:
            raise ValueError("periphery_size must be >= 1")
        if not p - 1 <= self.periphery_edges <= p * (p - 1) // 2:
            raise ValueError(
                f"periphery_edges must be in [{p - 1}, {p * (p - 1) // 2}] "
                f"for a connected simple periphery of {p} vertices")
        if self.attachment_edges < 1:
            raise ValueError("attachment_edges must be >= 1 per hole")
        for size, _ in self.holes:
            if self.attachment_edges > size * p:
                raise ValueError(
                    f"attachment_edges={self.attachment_edges} exceeds the {size * p} "
                    f"possible core-periphery pairs")

    @classmethod
    def from_dict(cls, d: dict) -> "BlackHoleSpec":
        d = dict(d)
        d["holes"] = tuple((int(s), float(p)) for s, p in d["holes"])
        return cls(**d)


@dataclass(frozen=True)
class BlackHoleGraph:
    graph: Graph
    cores: tuple[tuple[int, ...], ...]
    periphery: tuple[int, ...]
    attachments: tuple[tuple[int, int], ...]


def _core_edge_count(size: int, density: float) -> int:
    return int(round(density * size * (size - 1) / 2))


def _connected_random(rng: np.random.Generator, verts: np.ndarray, m: int) -> list[tuple[int, int]]:
    """Random spanning tree on ``verts`` topped up with uniform extra pairs to ``m`` edges."""
    n = len(verts)
    order = verts[rng.permutation(n)]
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        a, b = int(order[i]), int(order[j])
        edges.add((min(a, b), max(a, b)))
    total = n * (n - 1) // 2
    if m > total // 2:
        # dense: pick from the explicit complement instead of rejection sampling
        iu, ju = np.triu_indices(n, k=1)
        cand = [(int(min(verts[a], verts[b])), int(max(verts[a], verts[b]))) for a, b in zip(iu, ju)]
        rest = [e for e in cand if e not in edges]
        need = m - len(edges)
        pick = rng.choice(len(rest), size=need, replace=False) if need else []
        edges.update(rest[i] for i in sorted(pick))
    else:
        while len(edges) < m:
            a, b = rng.choice(verts, size=2, replace=False)
            edges.add((int(min(a, b)), int(max(a, b))))
    return sorted(edges)


def _geometric_sparse(rng: np.random.Generator, n: int, m: int) -> list[tuple[int, int]]:
    """Connected sparse graph with planar-like local structure.

    Scatter ``n`` points in the unit square and keep their Euclidean MST, then
    add ``m - (n - 1)`` edges picked at random among the remaining Gabriel
    edges. Very dense requests continue with the shortest remaining pairs.
    """
    pts = rng.random((n, 2))
    tree = set(emst(pts).edges)
    extra = m - len(tree)
    if extra <= 0:
        return sorted(tree)
    local = [e for e in gabriel(pts).edges if e not in tree]
    if len(local) >= extra:
        pick = rng.choice(len(local), size=extra, replace=False)
        return sorted(tree | {local[i] for i in pick})
    taken = tree | set(local)
    iu, ju = np.triu_indices(n, k=1)
    order = np.argsort(np.sum((pts[iu] - pts[ju]) ** 2, axis=1), kind="stable")
    rest = [(int(iu[i]), int(ju[i])) for i in order]
    rest = [e for e in rest if e not in taken][:extra - len(local)]
    return sorted(taken | set(rest))


def build_blackhole(spec: BlackHoleSpec) -> BlackHoleGraph:
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    edges: list[tuple[int, int]] = []
    cores = []
    start = 0
    for size, dens in spec.holes:
        verts = np.arange(start, start + size)
        cores.append(tuple(verts.tolist()))
        edges += _connected_random(rng, verts, _core_edge_count(size, dens))
        start += size
    periphery = np.arange(start, start + spec.periphery_size)
    edges += [(start + a, start + b) for a, b in
              _geometric_sparse(rng, spec.periphery_size, spec.periphery_edges)]
    attachments = []
    for core in cores:
        pairs = set()
        while len(pairs) < spec.attachment_edges:
            pairs.add((int(rng.choice(core)), int(rng.choice(periphery))))
        attachments += sorted(pairs)
    n = start + spec.periphery_size
    g = Graph(n, edges + attachments)
    return BlackHoleGraph(g, tuple(cores), tuple(periphery.tolist()), tuple(attachments))


def generate_blackhole(spec: BlackHoleSpec) -> Graph:
    return build_blackhole(spec).graph


def generate_grid(w: int, h: int) -> Graph:
    if w < 1 or h < 1:
        raise ValueError("grid dimensions must be >= 1")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return Graph(w * h, edges)


def generate_scale_free(n: int, edges_per_step: int, seed: int = 0) -> Graph:
    """Preferential attachment: each new vertex links to ``edges_per_step``
    distinct earlier vertices chosen proportionally to degree.

    The first new vertex (index ``edges_per_step``) links to all seed
    vertices, so ``m = (n - edges_per_step) * edges_per_step``.
    """
    k = edges_per_step
    if not n > k >= 1:
        raise ValueError(f"need n > edges_per_step >= 1, got n={n}, edges_per_step={k}")
    rng = np.random.Generator(np.random.PCG64(seed))
    targets = list(range(k))
    repeated: list[int] = []
    edges = []
    for v in range(k, n):
        edges += [(t, v) for t in targets]
        repeated += targets
        repeated += [v] * k
        chosen: set[int] = set()
        while len(chosen) < k:
            chosen.add(repeated[int(rng.integers(0, len(repeated)))])
        targets = sorted(chosen)
    return Graph(n, edges)


# ------------------------------------------------------------------- corpus


@dataclass
class CorpusEntry:
    name: str
    kind: str  # blackhole | grid | scalefree
    params: dict = field(default_factory=dict)
    graph_class: str = ""

    def build(self) -> Graph:
        if self.kind == "blackhole":
            return generate_blackhole(BlackHoleSpec.from_dict(self.params))
        if self.kind == "grid":
            return generate_grid(self.params["w"], self.params["h"])
        if self.kind == "scalefree":
            return generate_scale_free(self.params["n"], self.params["edges_per_step"],
                                       self.params.get("seed", 0))
        raise ValueError(f"unknown generator {self.kind!r}")


def write_corpus(entries: list[CorpusEntry], out_dir: str | Path) -> list[Path]:
    """Write one edge list per entry plus ``manifest.json``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for e in entries:
        p = out / f"{e.name}.txt"
        write_edge_list(e.build(), p)
        paths.append(p)
    manifest = [asdict(e) for e in entries]
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return paths


def blackhole_corpus() -> list[CorpusEntry]:
    """Five black-hole graphs with 540 to 1050 vertices, used by the sweep scripts."""
    specs = [
        ("bh540", [(80, 0.8), (60, 0.9)], 400, 470, 1, 11),
        ("bh940", [(100, 0.8), (80, 0.9), (60, 0.9)], 700, 820, 2, 12),
        ("bh810", [(120, 0.7), (90, 0.8)], 600, 700, 2, 13),
        ("bh780", [(70, 0.9)] * 4, 500, 590, 1, 14),
        ("bh1050", [(150, 0.6)], 900, 1050, 3, 15),
    ]
    return [
        CorpusEntry(name, "blackhole",
                    dict(holes=holes, periphery_size=p, periphery_edges=pe,
                         attachment_edges=att, seed=seed),
                    "blackhole")
        for name, holes, p, pe, att, seed in specs
    ]
