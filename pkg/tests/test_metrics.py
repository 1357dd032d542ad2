import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, path
from specsparse.genlab import generate_grid
from specsparse.graph_core import Graph, induced_by_edges
from specsparse.layout import Drawing, layout_fr
from specsparse.metrics import (QualityReport, append_reports, jaccard_quality, jaccard_terms,
                                quality_ratio)
from specsparse.shape import shape_graph
from specsparse.sparsify import sparsify


def drawing(labels, pts):
    return Drawing(np.array(pts, dtype=float), tuple(labels), "", 0, "test")


def test_p3_collinear_is_perfect():
    g = path(3)
    d = drawing(["0", "1", "2"], [(0, 0), (1, 0), (2, 0)])
    assert jaccard_quality(d, g, "GG") == 1.0


def test_p3_single_edge_proxy():
    g = path(3)
    d = drawing(["0", "1"], [(0, 0), (1, 0)])
    np.testing.assert_array_equal(jaccard_terms(d, g, "GG"), [1.0, 0.5, 0.0])
    assert jaccard_quality(d, g, "GG") == 0.5


def test_empty_drawing_scores_zero():
    g = path(5)
    assert jaccard_quality(drawing([], np.zeros((0, 2))), g) == 0.0


def test_isolated_vertex_convention():
    # vertex 2 is isolated in G and absent from the drawing: 0/0 scores 1
    g = Graph(3, [(0, 1)])
    d = drawing(["0", "1"], [(0, 0), (1, 0)])
    assert jaccard_quality(d, g) == pytest.approx(1.0)


def test_label_mismatch():
    with pytest.raises(ValueError, match="not a vertex"):
        jaccard_quality(drawing(["0", "zz"], [(0, 0), (1, 0)]), path(3))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=12), st.integers(0, 10_000), st.sampled_from(["GG", "RNG", "EMST"]))
def test_quality_bounds_and_perfect_case(g, seed, kind):
    pts = np.random.default_rng(seed).random((g.n, 2))
    d = drawing(g.labels, pts)
    terms = jaccard_terms(d, g, kind)
    assert np.all((terms >= 0) & (terms <= 1))
    q = jaccard_quality(d, g, kind)
    assert 0 <= q <= 1
    same = set(shape_graph(pts, kind).edges) == set(g.edges)
    assert (q == 1.0) == same


@pytest.mark.parametrize("seed", range(20))
def test_similarity_invariance_end_to_end(seed):
    g = generate_grid(6, 6)
    _, proxy = sparsify(g, "RE", 0.6, seed)
    d = layout_fr(proxy, seed, 80)
    r = np.random.default_rng(seed)
    t = d.transformed(scale=float(r.uniform(0.01, 100)), angle=float(r.uniform(0, 2 * np.pi)),
                      shift=tuple(r.uniform(-1e3, 1e3, 2)))
    for kind in ("GG", "RNG", "EMST"):
        assert jaccard_quality(t, g, kind) == jaccard_quality(d, g, kind)


def test_full_density_equals_self_quality():
    g = generate_grid(5, 4)
    for method in ("RE", "SSS", "DSS"):
        _, proxy = sparsify(g, method, 1.0, 3)
        assert jaccard_quality(layout_fr(proxy, 3), g) == jaccard_quality(layout_fr(g, 3), g)


def test_quality_ratio():
    assert quality_ratio(0.3, 0.3) == 1.0
    assert quality_ratio(0.4, 0.002) == pytest.approx(200)
    assert quality_ratio(0.4, 0.0) is None
    with pytest.raises(ValueError):
        quality_ratio(0.1, -1.0)


def test_append_reports(tmp_path):
    out = tmp_path / "q.csv"
    append_reports(out, [QualityReport("g", "DSS", 0.05, 0, "GG", "fr", 0.25, 2.0)])
    append_reports(out, [QualityReport("g", "RE", 0.05, 0, "GG", "fr", 0.125, None)])
    lines = out.read_text().splitlines()
    assert lines[0] == "graph,method,density,seed,shape,layout,Q,ratio,error"
    assert lines[1] == "g,DSS,0.05,0,GG,fr,0.25,2.0,"
    assert lines[2] == "g,RE,0.05,0,GG,fr,0.125,,"
    assert not math.isnan(float(lines[2].split(",")[6]))
