"""Density-sweep experiment harness.

A plan is a JSON document naming input graphs (edge-list files or generator
specs), methods, densities, layout seeds and shape graphs. Running it writes

* ``results.csv``  one row per (graph, method, density, seed, shape)
* ``summary.csv``  mean / stddev over seeds per configuration
* ``runtime.csv``  wall-clock per stage (kept apart so results stay byte-stable)
* ``plots/*.svg``  quality and ratio against density, per graph and per class
"""
from __future__ import annotations

import json
import logging
import math
import os
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .genlab import CorpusEntry
from .graph_core import Graph, largest_component, read_edge_list
from .layout import LAYOUTS, layout
from .metrics import QualityReport, jaccard_quality, quality_ratio, reports_to_csv
from .shape import KINDS
from .sparsify import METHODS, sparsify
from .spectral import cached_effective_resistance

log = logging.getLogger(__name__)

DEFAULT_DENSITIES = (0.01, 0.02, 0.03, 0.04, 0.05) + tuple(round(0.05 * i, 2) for i in range(2, 21))


@dataclass
class GraphSource:
    name: str
    path: str | None = None
    generator: str | None = None
    params: dict = field(default_factory=dict)
    graph_class: str = ""

    def load(self, base_dir: Path | None = None, keep_lcc: bool = False) -> Graph:
        if self.path is not None:
            p = Path(self.path)
            if base_dir is not None and not p.is_absolute():
                p = base_dir / p
            g = read_edge_list(p)
        elif self.generator is not None:
            g = CorpusEntry(self.name, self.generator, self.params).build()
        else:
            raise ValueError(f"graph {self.name!r} needs a path or a generator")
        return largest_component(g) if keep_lcc else g

    @classmethod
    def from_dict(cls, d: dict) -> "GraphSource":
        d = dict(d)
        if "class" in d:
            d["graph_class"] = d.pop("class")
        return cls(**d)


@dataclass
class ExperimentPlan:
    graphs: list[GraphSource]
    methods: tuple[str, ...] = METHODS
    densities: tuple[float, ...] = DEFAULT_DENSITIES
    seeds: int = 5
    base_seed: int = 0
    shapes: tuple[str, ...] = ("GG",)
    layout: str = "fr"
    iterations: int | None = None
    keep_lcc: bool = False
    out_dir: str = "results"
    jobs: int = 1
    plots: bool = True

    def __post_init__(self):
        self.methods = tuple(m.upper() for m in self.methods)
        self.shapes = tuple(s.upper() for s in self.shapes)
        self.densities = tuple(sorted(float(d) for d in self.densities))
        self.validate()

    def validate(self) -> None:
        if not self.graphs:
            raise ValueError("plan has no input graphs")
        bad = [m for m in self.methods if m not in METHODS]
        if bad or not self.methods:
            raise ValueError(f"methods must be a non-empty subset of {METHODS}, got {self.methods}")
        if any(not 0 < d <= 1 for d in self.densities) or not self.densities:
            raise ValueError("densities must lie in (0, 1]")
        if self.seeds < 1:
            raise ValueError("seeds must be >= 1")
        bad = [s for s in self.shapes if s not in KINDS]
        if bad or not self.shapes:
            raise ValueError(f"shapes must be a non-empty subset of {KINDS}")
        if self.layout not in LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError("iterations must be >= 0")

    @property
    def seed_list(self) -> list[int]:
        return list(range(self.base_seed, self.base_seed + self.seeds))

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentPlan":
        d = dict(d)
        d["graphs"] = [GraphSource.from_dict(g) for g in d["graphs"]]
        return cls(**d)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentPlan":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        d = asdict(self)
        for g in d["graphs"]:
            g["class"] = g.pop("graph_class")
        return d


# ------------------------------------------------------------------ workers

_GRAPHS: list[Graph] = []
_TABLES: list = []


def _init_worker(graphs, tables):
    global _GRAPHS, _TABLES
    _GRAPHS, _TABLES = graphs, tables


def _run_task(task):
    gi, method, density, seed, shapes, layout_name, iterations = task
    g = _GRAPHS[gi]
    times = {}
    if isinstance(g, str):
        return [None] * len(shapes), g, times
    try:
        t = time.perf_counter()
        _, proxy = sparsify(g, method, density, seed, resistance=_TABLES[gi])
        times["sparsify"] = time.perf_counter() - t
        t = time.perf_counter()
        drawing = layout(proxy, layout_name, seed, iterations)
        times["layout"] = time.perf_counter() - t
        t = time.perf_counter()
        qs = [jaccard_quality(drawing, g, s) for s in shapes]
        times["quality"] = time.perf_counter() - t
        return qs, "", times
    except Exception as exc:  # recorded per row; the sweep continues
        log.debug("task %s failed:\n%s", task, traceback.format_exc())
        return [None] * len(shapes), f"{type(exc).__name__}: {exc}", times


def _tasks(plan: ExperimentPlan):
    for gi in range(len(plan.graphs)):
        for method in plan.methods:
            for density in plan.densities:
                for seed in plan.seed_list:
                    yield (gi, method, density, seed, plan.shapes, plan.layout, plan.iterations)


def run_experiment(plan: ExperimentPlan, base_dir: Path | None = None) -> list[QualityReport]:
    out = Path(plan.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    graphs, tables, timing_rows = [], [], []
    needs_r = any(m != "RE" for m in plan.methods)
    for src in plan.graphs:
        # a graph that cannot be loaded turns into error rows; the sweep goes on
        try:
            g = src.load(base_dir, plan.keep_lcc)
            t = time.perf_counter()
            table = cached_effective_resistance(g) if needs_r and g.m else None
            timing_rows.append((src.name, "", "", "", "resistance", time.perf_counter() - t))
        except (OSError, ValueError, KeyError) as exc:
            log.warning("graph %s failed to load: %s", src.name, exc)
            graphs.append(f"{type(exc).__name__}: {exc}")
            tables.append(None)
            continue
        graphs.append(g)
        tables.append(table)
        log.info("loaded %s: n=%d m=%d", src.name, g.n, g.m)

    tasks = list(_tasks(plan))
    if plan.jobs > 1:
        with ProcessPoolExecutor(plan.jobs, initializer=_init_worker,
                                 initargs=(graphs, tables)) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        _init_worker(graphs, tables)
        outcomes = [_run_task(t) for t in tasks]

    reports = []
    for task, (qs, err, times) in zip(tasks, outcomes):
        gi, method, density, seed = task[:4]
        name = plan.graphs[gi].name
        for shape, q in zip(plan.shapes, qs):
            reports.append(QualityReport(name, method, density, seed, shape, plan.layout, q, None, err))
        for stage, secs in times.items():
            timing_rows.append((name, method, density, seed, stage, secs))

    with_ratio = "RE" in plan.methods and len(plan.methods) > 1
    if with_ratio:
        base = {(r.graph, r.density, r.seed, r.shape): r.Q for r in reports if r.method == "RE"}
        for r in reports:
            q_re = base.get((r.graph, r.density, r.seed, r.shape))
            if r.Q is not None and q_re is not None:
                r.ratio = quality_ratio(r.Q, q_re)

    columns = ("graph", "method", "density", "seed", "shape", "layout", "Q")
    columns += ("ratio",) if with_ratio else ()
    columns += ("error",)
    (out / "results.csv").write_text(reports_to_csv(reports, columns))
    summary = summarize(reports, plan)
    (out / "summary.csv").write_text(_summary_csv(summary, with_ratio))
    (out / "runtime.csv").write_text(
        "graph,method,density,seed,stage,seconds\n"
        + "".join(f"{g},{m},{d},{s},{st},{sec:.6f}\n" for g, m, d, s, st, sec in timing_rows))
    (out / "plan.json").write_text(json.dumps(plan.to_dict(), indent=2, sort_keys=True) + "\n")
    if plan.plots:
        from .render import plot_experiment
        plot_experiment(summary, plan, out / "plots", with_ratio)
    return reports


# ------------------------------------------------------------------ summary


@dataclass
class SummaryRow:
    graph: str
    graph_class: str
    method: str
    density: float
    shape: str
    layout: str
    n: int
    Q_mean: float
    Q_std: float
    ratio: float | None = None


def summarize(reports: list[QualityReport], plan: ExperimentPlan) -> list[SummaryRow]:
    """Mean and sample stddev of Q over seeds; ratio is mean Q over mean Q of RE."""
    classes = {g.name: g.graph_class for g in plan.graphs}
    groups: dict[tuple, list[float]] = {}
    for r in reports:
        key = (r.graph, r.method, r.density, r.shape)
        groups.setdefault(key, [])
        if r.Q is not None:
            groups[key].append(r.Q)
    rows = []
    for (graph, method, density, shape), qs in groups.items():
        arr = np.array(qs)
        mean = float(arr.mean()) if len(arr) else math.nan
        std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
        rows.append(SummaryRow(graph, classes[graph], method, density, shape, plan.layout,
                               len(arr), mean, std))
    base = {(r.graph, r.density, r.shape): r.Q_mean for r in rows if r.method == "RE"}
    for r in rows:
        q_re = base.get((r.graph, r.density, r.shape))
        if q_re is not None and not math.isnan(q_re) and not math.isnan(r.Q_mean):
            r.ratio = quality_ratio(r.Q_mean, q_re)
    return rows


def _summary_csv(rows: list[SummaryRow], with_ratio: bool) -> str:
    cols = ["graph", "graph_class", "method", "density", "shape", "layout", "n", "Q_mean", "Q_std"]
    if with_ratio:
        cols.append("ratio")
    return reports_to_csv(rows, cols)


def load_summary(path: str | Path) -> list[SummaryRow]:
    import csv

    rows = []
    with Path(path).open(newline="") as fh:
        for d in csv.DictReader(fh):
            ratio = d.get("ratio") or None
            rows.append(SummaryRow(d["graph"], d["graph_class"], d["method"], float(d["density"]),
                                   d["shape"], d["layout"], int(d["n"]), float(d["Q_mean"]),
                                   float(d["Q_std"]), float(ratio) if ratio else None))
    return rows


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1))


def with_overrides(plan: ExperimentPlan, **kw) -> ExperimentPlan:
    """Copy of ``plan`` with the non-None keyword fields replaced."""
    return replace(plan, **{k: v for k, v in kw.items() if v is not None})
