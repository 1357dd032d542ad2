"""SVG output: straight-line drawings, shape-graph overlays and sweep plots."""
from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .layout import Drawing


def _fmt(x: float) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".")


def drawing_svg(d: Drawing, edges, overlay=None, size: float = 800.0,
                node_radius: float = 3.0) -> str:
    """Render a drawing; ``overlay`` edges (e.g. a shape graph) go on top in red."""
    pos = d.positions
    if len(pos) == 0:
        lo, span = np.zeros(2), 1.0
    else:
        lo = pos.min(axis=0)
        span = float(max((pos.max(axis=0) - lo).max(), 1e-12))
    margin = 2 * node_radius
    p = (pos - lo) / span * size + margin
    extent = size + 2 * margin
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(extent)} {_fmt(extent)}">\n',
           '<g stroke="#888" stroke-width="0.6">\n']
    for u, v in edges:
        out.append(f'<line x1="{_fmt(p[u, 0])}" y1="{_fmt(p[u, 1])}" '
                   f'x2="{_fmt(p[v, 0])}" y2="{_fmt(p[v, 1])}"/>\n')
    out.append("</g>\n")
    if overlay is not None:
        out.append('<g stroke="#d33" stroke-width="0.8" stroke-opacity="0.7">\n')
        for u, v in overlay:
            out.append(f'<line x1="{_fmt(p[u, 0])}" y1="{_fmt(p[u, 1])}" '
                       f'x2="{_fmt(p[v, 0])}" y2="{_fmt(p[v, 1])}"/>\n')
        out.append("</g>\n")
    out.append('<g fill="#246">\n')
    for i, (x, y) in enumerate(p):
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(node_radius)}">'
                   f'<title>{escape(d.labels[i])}</title></circle>\n')
    out.append("</g>\n</svg>\n")
    return "".join(out)


def write_drawing_svg(d: Drawing, edges, path, overlay=None) -> None:
    Path(path).write_text(drawing_svg(d, edges, overlay))


# -------------------------------------------------------------------- plots

_COLOURS = {"RE": "#7f7f7f", "SSS": "#1f77b4", "DSS": "#d62728"}


def _save(fig, path: Path) -> None:
    import matplotlib.pyplot as plt

    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _line_plot(series, title, ylabel, path, band=None, hline=None):
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "specsparse"
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for method, (xs, ys) in series.items():
        ax.plot(xs, ys, marker="o", ms=3, label=method, color=_COLOURS.get(method))
        if band and method in band:
            lo, hi = band[method]
            ax.fill_between(xs, lo, hi, alpha=0.2, color=_COLOURS.get(method))
    if hline is not None:
        ax.axhline(hline, color="k", lw=0.5, ls="--")
    ax.set_xlabel("relative density")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    _save(fig, path)


def plot_experiment(summary, plan, out_dir, with_ratio: bool) -> None:
    """Quality and ratio curves per graph, then unweighted means per graph class."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    graphs = [g.name for g in plan.graphs]
    classes = sorted({g.graph_class or "all" for g in plan.graphs})
    for shape in plan.shapes:
        rows = [r for r in summary if r.shape == shape]
        for name in graphs:
            sel = [r for r in rows if r.graph == name]
            series, band, ratios = {}, {}, {}
            for m in plan.methods:
                ms = sorted((r for r in sel if r.method == m), key=lambda r: r.density)
                xs = [r.density for r in ms]
                mean = np.array([r.Q_mean for r in ms])
                std = np.array([r.Q_std for r in ms])
                series[m] = (xs, mean)
                band[m] = (mean - std, mean + std)
                if with_ratio and m != "RE":
                    ratios[m] = (xs, [np.nan if r.ratio is None else r.ratio for r in ms])
            _line_plot(series, f"{name} ({shape})", "Q", out / f"{name}_{shape}_quality.svg", band)
            if ratios:
                _line_plot(ratios, f"{name} ({shape})", "Q / Q_RE",
                           out / f"{name}_{shape}_ratio.svg", hline=1.0)
        for cls in classes:
            members = [g.name for g in plan.graphs if (g.graph_class or "all") == cls]
            series, ratios = {}, {}
            for m in plan.methods:
                xs = list(plan.densities)
                qs, rs = [], []
                for d in xs:
                    vals = [r for r in rows if r.graph in members and r.method == m and r.density == d]
                    qs.append(np.mean([r.Q_mean for r in vals]) if vals else np.nan)
                    rr = [r.ratio for r in vals if r.ratio is not None]
                    rs.append(np.mean(rr) if rr else np.nan)
                series[m] = (xs, qs)
                if with_ratio and m != "RE":
                    ratios[m] = (xs, rs)
            _line_plot(series, f"class {cls} ({shape}), mean of {len(members)} graphs", "mean Q",
                       out / f"class_{cls}_{shape}_quality.svg")
            if ratios:
                _line_plot(ratios, f"class {cls} ({shape})", "mean Q / Q_RE",
                           out / f"class_{cls}_{shape}_ratio.svg", hline=1.0)
