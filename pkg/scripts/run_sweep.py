"""Density sweep over the black-hole corpus, then a short text report.

    python scripts/run_sweep.py --layout multilevel --seeds 5 --out results/sweep
"""
import argparse
import logging
from collections import defaultdict

import numpy as np
from scipy.stats import spearmanr

from specsparse.experiment import DEFAULT_DENSITIES, ExperimentPlan, GraphSource, run_experiment, summarize
from specsparse.genlab import blackhole_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--layout", default="multilevel", choices=("fr", "multilevel"))
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--shapes", default="GG,RNG,EMST")
    ap.add_argument("--densities", default=None, help="comma-separated, default: full list")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="results/sweep")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    graphs = [GraphSource(e.name, generator=e.kind, params=e.params, graph_class=e.graph_class)
              for e in blackhole_corpus()]
    densities = DEFAULT_DENSITIES if args.densities is None else [float(x) for x in args.densities.split(",")]
    plan = ExperimentPlan(graphs, densities=densities, seeds=args.seeds, shapes=args.shapes.split(","),
                          layout=args.layout, out_dir=args.out, jobs=args.jobs)
    reports = run_experiment(plan)
    rows = [r for r in summarize(reports, plan) if r.shape == plan.shapes[0]]

    curves = defaultdict(dict)
    for r in rows:
        curves[(r.graph, r.method)][r.density] = r.Q_mean
    print(f"\nmean Q ({plan.shapes[0]}, {plan.layout}) and Spearman(density, Q)")
    for (graph, method), c in sorted(curves.items()):
        ds = sorted(c)
        rho = spearmanr(ds, [c[d] for d in ds]).statistic if len(ds) > 1 else float("nan")
        low = " ".join(f"{c[d]:.3f}" for d in ds[:6])
        print(f"{graph:8s} {method:4s} rho={rho:5.2f}  {low} ... {c[ds[-1]]:.3f}")
    ratios = [r.ratio for r in rows if r.method == "DSS" and r.density == 0.05 and r.ratio]
    if ratios:
        print(f"DSS/RE at 5%: per graph {np.round(ratios, 2).tolist()}")


if __name__ == "__main__":
    main()
