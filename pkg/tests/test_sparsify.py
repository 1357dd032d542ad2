import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import barbell, complete, graphs, path
from specsparse.graph_core import Graph, load_edge_list
from specsparse.spectral import ResistanceTable, effective_resistance
from specsparse.sparsify import (sample_re, sample_sss, select_dss, sparsify, target_edge_count,
                                 write_sparsification)


def _first_draw_freq(g, draw, seeds=30_000):
    counts = dict.fromkeys(g.edges, 0)
    for s in range(seeds):
        (e,) = draw(s).selected
        counts[e] += 1
    return {e: c / seeds for e, c in counts.items()}


def test_re_exhaustive_and_deterministic():
    g = complete(5)
    assert sample_re(g, g.m, 7).selected == g.edges
    assert sample_re(g, 4, 3) == sample_re(g, 4, 3)
    with pytest.raises(ValueError):
        sample_re(g, 0, 1)
    with pytest.raises(ValueError):
        sample_re(g, g.m + 1, 1)


@pytest.mark.slow
def test_re_uniform_on_k3():
    g = complete(3)
    freq = _first_draw_freq(g, lambda s: sample_re(g, 1, s))
    for f in freq.values():
        assert f == pytest.approx(1 / 3, abs=0.01)


@pytest.mark.slow
def test_sss_equal_resistances_is_uniform():
    g = complete(3)
    r = effective_resistance(g)
    freq = _first_draw_freq(g, lambda s: sample_sss(g, r, 1, s))
    for f in freq.values():
        assert f == pytest.approx(1 / 3, abs=0.01)


@pytest.mark.slow
def test_sss_barbell_bridge_frequency():
    g = barbell()
    r = effective_resistance(g)
    freq = _first_draw_freq(g, lambda s: sample_sss(g, r, 1, s))
    # bridge weight 1 against six triangle edges of weight 2/3
    assert freq[(2, 3)] == pytest.approx(0.2, abs=0.01)


def test_sss_full_and_errors():
    g = barbell()
    r = effective_resistance(g)
    assert sample_sss(g, r, g.m, 99).selected == g.edges
    bad = ResistanceTable(g.edges, np.where(np.arange(g.m) == 0, 0.0, 1.0), 0.0)
    with pytest.raises(ValueError, match="positive"):
        sample_sss(g, bad, 2, 0)
    with pytest.raises(ValueError):
        sample_sss(path(3), r, 1, 0)


def test_dss_examples():
    g = barbell()
    r = effective_resistance(g)
    assert select_dss(g, r, 1).selected == ((2, 3),)
    assert select_dss(g, r, g.m).selected == g.edges
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    rt = effective_resistance(tree)
    for k in range(1, tree.m + 1):
        assert select_dss(tree, rt, k).selected == tree.edges[:k]


def test_dss_ties_are_lexicographic():
    g = complete(4)
    r = effective_resistance(g)
    assert select_dss(g, r, 2).selected == ((0, 1), (0, 2))


def _bridges(g):
    out = []
    for e in g.edges:
        h = Graph(g.n, [f for f in g.edges if f != e])
        from specsparse.graph_core import connected_components
        if connected_components(h)[0] > connected_components(g)[0]:
            out.append(e)
    return out


@settings(max_examples=80)
@given(graphs(min_n=3, max_n=10), st.integers(0, 2**63 - 1), st.data())
def test_sampling_contracts(g, seed, data):
    if g.m == 0:
        return
    r = effective_resistance(g)
    m_prime = data.draw(st.integers(1, g.m))
    re_, sss, dss = sample_re(g, m_prime, seed), sample_sss(g, r, m_prime, seed), select_dss(g, r, m_prime)
    for sp in (re_, sss, dss):
        assert len(sp.selected) == m_prime == sp.m_prime
        assert len(set(sp.selected)) == m_prime
        assert set(sp.selected) <= set(g.edges)
        assert sp.relative_density == pytest.approx(m_prime / g.m)
    assert select_dss(g, r, m_prime) == dss
    assert sample_sss(g, r, m_prime, seed) == sss
    bridges = _bridges(g)
    if m_prime >= len(bridges):
        assert set(bridges) <= set(dss.selected)


def test_stochastic_methods_vary_with_seed():
    g = Graph(12, [(i, j) for i in range(12) for j in range(i + 1, 12) if (j - i) in (1, 5)])
    assert g.m == 18
    r = effective_resistance(g)
    assert len({sample_re(g, 10, s).selected for s in range(1000)}) >= 2
    assert len({sample_sss(g, r, 10, s).selected for s in range(1000)}) >= 2
    assert len({select_dss(g, r, 10).selected for _ in range(5)}) == 1


def test_sparsify_density_rule():
    g = Graph(150, [(i, j) for i in range(150) for j in range(i + 1, 150) if j - i <= 4][:576])
    assert g.m == 576
    assert target_edge_count(g, 0.03) == 17
    assert target_edge_count(g, 0.000001) == 1
    sp, proxy = sparsify(g, "dss", 0.03)
    assert sp.m_prime == 17 and proxy.m == 17
    with pytest.raises(ValueError):
        target_edge_count(g, 0.0)
    with pytest.raises(ValueError):
        sparsify(g, "forest-fire", 0.5)


@pytest.mark.parametrize("method", ["RE", "SSS", "DSS"])
def test_sparsify_full_density_is_identity(method):
    g = load_edge_list("a b\nb c\nc a\nc d\nd e\n")
    sp, proxy = sparsify(g, method, 1.0, seed=5)
    assert proxy.labels == g.labels and proxy.edges == g.edges
    assert set(proxy.labels) <= set(g.labels)


def test_write_sparsification(tmp_path):
    g = load_edge_list("a b\nb c\nc a\nc d\n")
    sp, _ = sparsify(g, "DSS", 0.5)
    out = tmp_path / "proxy.txt"
    write_sparsification(g, sp, out)
    side = json.loads((tmp_path / "proxy.txt.json").read_text())
    assert side == {"method": "DSS", "m_prime": 2, "seed": None, "source_hash": g.content_hash()}
    assert load_edge_list(out.read_text()).m == 2
