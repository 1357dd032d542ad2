"""Shape-based proxy quality: neighbourhood Jaccard between a graph and the
shape graph of a (proxy) drawing."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .graph_core import Graph
from .layout import Drawing
from .shape import shape_graph


@dataclass
class QualityReport:
    graph: str
    method: str
    density: float
    seed: int
    shape: str
    layout: str
    Q: float | None
    ratio: float | None = None
    error: str = ""


RESULT_COLUMNS = tuple(f.name for f in fields(QualityReport))


def jaccard_terms(d: Drawing, g: Graph, shape_kind: str = "GG") -> np.ndarray:
    """Per-vertex Jaccard similarity for every vertex of the original graph.

    Vertices of ``g`` that are missing from the drawing have an empty
    shape neighbourhood. A vertex with both neighbourhoods empty scores 1.
    """
    index = g.label_index()
    try:
        where = [index[lab] for lab in d.labels]
    except KeyError as exc:
        raise ValueError(f"drawing vertex {exc.args[0]!r} is not a vertex of the graph") from None
    if len(set(where)) != len(where):
        raise ValueError("drawing places a vertex more than once")
    shape_nbrs: list[set[int]] = [set() for _ in range(g.n)]
    if d.n:
        sg = shape_graph(d.positions, shape_kind)
        for a, b in sg.edges:
            u, v = where[a], where[b]
            shape_nbrs[u].add(v)
            shape_nbrs[v].add(u)
    terms = np.empty(g.n)
    for u, nb in enumerate(g.neighbours()):
        union = len(nb | shape_nbrs[u])
        terms[u] = 1.0 if union == 0 else len(nb & shape_nbrs[u]) / union
    return terms


def jaccard_quality(d: Drawing, g: Graph, shape_kind: str = "GG") -> float:
    """Mean neighbourhood Jaccard similarity, a value in [0, 1]."""
    if g.n == 0:
        raise ValueError("quality is undefined for an empty graph")
    return float(np.mean(jaccard_terms(d, g, shape_kind)))


def quality_ratio(q_method: float, q_re: float) -> float | None:
    """``q_method / q_re``; ``None`` when the baseline is zero."""
    if q_re < 0:
        raise ValueError("baseline quality must be non-negative")
    if q_re == 0:
        return None
    return q_method / q_re


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "nan" if math.isnan(x) else repr(x)
    return str(x)


def reports_to_csv(reports, columns=RESULT_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rep in reports:
        w.writerow([_fmt(getattr(rep, c)) for c in columns])
    return buf.getvalue()


def append_reports(path: str | Path, reports, columns=RESULT_COLUMNS) -> None:
    """Append rows to ``path``, writing the header only for a new file."""
    path = Path(path)
    text = reports_to_csv(reports, columns)
    if path.exists() and path.stat().st_size:
        existing = path.read_text().splitlines()[0].split(",")
        if tuple(existing) != tuple(columns):
            raise ValueError(f"{path}: column mismatch with existing file")
        text = text.split("\n", 1)[1]
    with path.open("a") as fh:
        fh.write(text)
