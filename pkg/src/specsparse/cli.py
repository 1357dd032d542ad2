"""Command-line interface: ``specsparse <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .genlab import BlackHoleSpec, CorpusEntry, generate_blackhole, generate_grid, \
    generate_scale_free, write_corpus
from .graph_core import GraphFormatError, largest_component, read_edge_list, write_edge_list
from .layout import LAYOUTS, layout, read_drawing
from .metrics import QualityReport, append_reports, jaccard_quality
from .shape import shape_graph, write_shape_graph
from .sparsify import METHODS, sparsify, write_sparsification

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _load(path, keep_lcc=False):
    g = read_edge_list(path)
    return largest_component(g) if keep_lcc else g


def cmd_sparsify(args) -> int:
    g = _load(args.input, args.keep_lcc)
    sp, proxy = sparsify(g, args.method, args.density, args.seed)
    if args.out:
        write_sparsification(g, sp, args.out)
    else:
        sys.stdout.write("".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in sp.selected))
    print(f"{sp.method}: kept {sp.m_prime}/{g.m} edges, {proxy.n} vertices", file=sys.stderr)
    return EXIT_OK


def cmd_layout(args) -> int:
    g = _load(args.input, args.keep_lcc)
    d = layout(g, args.layout, args.seed, args.iterations)
    text = d.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        from .render import write_drawing_svg
        write_drawing_svg(d, g.edges, args.svg)
    return EXIT_OK


def cmd_shape(args) -> int:
    d = read_drawing(args.drawing)
    sg = shape_graph(d.positions, args.shape)
    if args.out:
        write_shape_graph(sg, args.out, d.labels)
    else:
        sys.stdout.write(sg.to_text(d.labels))
    if args.svg:
        from .render import write_drawing_svg
        edges = []
        if args.graph:
            g = read_edge_list(args.graph)
            idx = {lab: i for i, lab in enumerate(d.labels)}
            edges = [(idx[g.labels[u]], idx[g.labels[v]]) for u, v in g.edges
                     if g.labels[u] in idx and g.labels[v] in idx]
        write_drawing_svg(d, edges, args.svg, overlay=sg.edges)
    return EXIT_OK


def cmd_quality(args) -> int:
    d = read_drawing(args.drawing)
    g = _load(args.graph, args.keep_lcc)
    for shape in args.shape:
        q = jaccard_quality(d, g, shape)
        print(f"{shape}\t{q!r}")
        if args.out:
            append_reports(args.out, [QualityReport(
                args.name or Path(args.graph).stem, args.method or "", args.density or 1.0,
                args.seed, shape, args.layout_tag or d.algorithm, q)])
    return EXIT_OK


def cmd_experiment(args) -> int:
    from .experiment import ExperimentPlan, GraphSource, run_experiment, with_overrides

    if args.plan:
        plan = ExperimentPlan.from_json(args.plan)
        base = Path(args.plan).parent
    else:
        if not args.inputs:
            raise UsageError("experiment needs --plan or input graph files")
        plan = ExperimentPlan([GraphSource(Path(p).stem, path=str(p)) for p in args.inputs])
        base = None
    if args.inputs and args.plan:
        plan.graphs += [GraphSource(Path(p).stem, path=str(Path(p).resolve())) for p in args.inputs]
    plan = with_overrides(
        plan,
        methods=tuple(args.methods.split(",")) if args.methods else None,
        densities=tuple(args.densities) if args.densities else None,
        seeds=args.seeds, base_seed=args.seed, shapes=tuple(args.shape) if args.shape else None,
        layout=args.layout, iterations=args.iterations, out_dir=args.out,
        keep_lcc=True if args.keep_lcc else None, jobs=args.jobs,
        plots=False if args.no_plots else None)
    reports = run_experiment(plan, base)
    failed = sum(1 for r in reports if r.error)
    print(f"wrote {len(reports)} rows to {plan.out_dir} ({failed} failed)", file=sys.stderr)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "corpus":
        if not args.manifest:
            raise UsageError("generate corpus needs --manifest")
        entries = [CorpusEntry(**e) for e in json.loads(Path(args.manifest).read_text())]
        write_corpus(entries, args.out or ".")
        return EXIT_OK
    if args.kind == "blackhole":
        if not args.holes:
            raise UsageError("generate blackhole needs --holes SIZE:DENSITY[,...]")
        holes = []
        for part in args.holes.split(","):
            size, _, dens = part.partition(":")
            holes.append((int(size), float(dens or 1.0)))
        spec = BlackHoleSpec(tuple(holes), args.periphery_size, args.periphery_edges,
                             args.attachment_edges, args.seed)
        g = generate_blackhole(spec)
    elif args.kind == "grid":
        g = generate_grid(args.w, args.h)
    else:
        g = generate_scale_free(args.n, args.k, args.seed)
    if args.out:
        write_edge_list(g, args.out)
    else:
        sys.stdout.write("".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.edges))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="specsparse", description="Spectral sparsification for graph drawing.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sparsify", help="sparsify an edge list")
    s.add_argument("input")
    s.add_argument("--method", type=str.upper, choices=METHODS, default="DSS")
    s.add_argument("--density", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--keep-lcc", action="store_true")
    s.set_defaults(func=cmd_sparsify)

    s = sub.add_parser("layout", help="lay out an edge list, write label,x,y CSV")
    s.add_argument("input")
    s.add_argument("--layout", choices=sorted(LAYOUTS), default="fr")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iterations", type=int)
    s.add_argument("--out")
    s.add_argument("--svg")
    s.add_argument("--keep-lcc", action="store_true")
    s.set_defaults(func=cmd_layout)

    s = sub.add_parser("shape", help="shape graph of a drawing")
    s.add_argument("drawing")
    s.add_argument("--shape", type=str.upper, choices=("GG", "RNG", "EMST"), default="GG")
    s.add_argument("--out")
    s.add_argument("--svg", help="overlay the shape graph on the drawing")
    s.add_argument("--graph", help="edge list to draw under the overlay")
    s.set_defaults(func=cmd_shape)

    s = sub.add_parser("quality", help="proxy quality of a drawing against a graph")
    s.add_argument("drawing")
    s.add_argument("graph")
    s.add_argument("--shape", type=str.upper, choices=("GG", "RNG", "EMST"), action="append")
    s.add_argument("--out", help="append a row to this results CSV")
    s.add_argument("--name")
    s.add_argument("--method", type=str.upper)
    s.add_argument("--density", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--layout-tag")
    s.add_argument("--keep-lcc", action="store_true")
    s.set_defaults(func=cmd_quality)

    s = sub.add_parser("experiment", help="run a density sweep")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--plan")
    s.add_argument("--methods", help="comma-separated subset of RE,SSS,DSS")
    s.add_argument("--densities", type=_floats)
    s.add_argument("--seeds", type=int)
    s.add_argument("--seed", type=int, help="first seed")
    s.add_argument("--shape", type=str.upper, choices=("GG", "RNG", "EMST"), action="append")
    s.add_argument("--layout", choices=sorted(LAYOUTS))
    s.add_argument("--iterations", type=int)
    s.add_argument("--out")
    s.add_argument("--jobs", type=int)
    s.add_argument("--keep-lcc", action="store_true")
    s.add_argument("--no-plots", action="store_true")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("generate", help="synthetic graphs")
    s.add_argument("kind", choices=("blackhole", "grid", "scalefree", "corpus"))
    s.add_argument("--holes", help="SIZE:DENSITY[,SIZE:DENSITY...]")
    s.add_argument("--periphery-size", type=int, default=100)
    s.add_argument("--periphery-edges", type=int, default=120)
    s.add_argument("--attachment-edges", type=int, default=1)
    s.add_argument("--w", type=int, default=10)
    s.add_argument("--h", type=int, default=10)
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--manifest")
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "quality" and not args.shape:
        args.shape = ["GG"]
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"specsparse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, ValueError, KeyError, OSError) as exc:
        print(f"specsparse: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
