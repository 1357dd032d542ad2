import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specsparse.shape import emst, gabriel, rng, shape_graph, write_shape_graph

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
COLLINEAR = [(0, 0), (1, 0), (2, 0)]


def brute_gabriel(pts):
    """Closed-disk rule in exact integer arithmetic: c kills ab iff (c-a).(c-b) <= 0."""
    out = []
    for a, b in itertools.combinations(range(len(pts)), 2):
        (ax, ay), (bx, by) = pts[a], pts[b]
        if all((cx - ax) * (cx - bx) + (cy - ay) * (cy - by) > 0
               for c, (cx, cy) in enumerate(pts) if c not in (a, b)):
            out.append((a, b))
    return tuple(out)


def brute_rng(pts):
    def d2(p, q):
        return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
    out = []
    for a, b in itertools.combinations(range(len(pts)), 2):
        d = d2(pts[a], pts[b])
        if not any(max(d2(pts[a], pts[c]), d2(pts[b], pts[c])) < d
                   for c in range(len(pts)) if c not in (a, b)):
            out.append((a, b))
    return tuple(out)


def brute_emst_weight(pts):
    n = len(pts)
    pairs = list(itertools.combinations(range(n), 2))
    best = math.inf
    for tree in itertools.combinations(pairs, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        ok = True
        for u, v in tree:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            best = min(best, sum(math.dist(pts[u], pts[v]) for u, v in tree))
    return best


def weight(pts, edges):
    return sum(math.dist(pts[u], pts[v]) for u, v in edges)


def test_gabriel_examples():
    assert gabriel(COLLINEAR).edges == ((0, 1), (1, 2))
    assert gabriel(SQUARE).edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert gabriel([(0, 0), (3, 4)]).edges == ((0, 1),)


def test_rng_examples():
    tri = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
    assert rng(tri).edges == ((0, 1), (0, 2), (1, 2))
    assert rng(COLLINEAR).edges == ((0, 1), (1, 2))
    assert rng([(0, 0), (3, 4)]).edges == ((0, 1),)


def test_emst_examples():
    t = emst(COLLINEAR)
    assert t.edges == ((0, 1), (1, 2)) and weight(COLLINEAR, t.edges) == 2
    sq = emst(SQUARE)
    assert len(sq.edges) == 3 and weight(SQUARE, sq.edges) == pytest.approx(3)
    assert brute_emst_weight(SQUARE) == pytest.approx(3)
    assert emst([(0.3, 0.3)]).edges == ()


def point_sets(span):
    return st.integers(1, 40).flatmap(lambda n: st.lists(
        st.tuples(st.integers(0, span), st.integers(0, span)), min_size=n, max_size=n, unique=True))


# small coordinate ranges force collinear and cocircular ties
@settings(max_examples=100, deadline=None)
@given(point_sets(12))
def test_gg_rng_match_brute_force_degenerate(pts):
    p = np.array(pts, dtype=float)
    assert gabriel(p).edges == brute_gabriel(pts)
    assert rng(p).edges == brute_rng(pts)
    assert set(emst(p).edges) <= set(rng(p).edges) <= set(gabriel(p).edges)


@settings(max_examples=100, deadline=None)
@given(point_sets(100_000))
def test_gg_rng_match_brute_force_generic(pts):
    p = np.array(pts, dtype=float)
    assert gabriel(p).edges == brute_gabriel(pts)
    assert rng(p).edges == brute_rng(pts)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.lists(
    st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=n, max_size=n, unique=True)))
def test_emst_matches_enumeration(pts):
    if len({tuple(p) for p in pts}) < len(pts):
        return
    t = emst(pts)
    assert len(t.edges) == len(pts) - 1
    assert weight(pts, t.edges) == pytest.approx(brute_emst_weight(pts), rel=1e-12, abs=1e-12)


def test_containment_chain_on_random_sets():
    r = np.random.default_rng(2024)
    for _ in range(1000):
        p = r.random((30, 2))
        t, rn, gg = set(emst(p).edges), set(rng(p).edges), set(gabriel(p).edges)
        assert len(t) == 29
        assert t <= rn <= gg


def test_delaunay_path_matches_brute_force():
    r = np.random.default_rng(7)
    for n in (50, 150, 400):
        p = r.random((n, 2))
        assert gabriel(p, method="delaunay").edges == gabriel(p, method="brute").edges
        assert rng(p, method="delaunay").edges == rng(p, method="brute").edges
    # lattice points are cocircular everywhere; Qhull must not lose Gabriel edges
    grid = np.array([(x, y) for x in range(15) for y in range(15)], dtype=float)
    assert gabriel(grid, method="delaunay").edges == gabriel(grid, method="brute").edges


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 30), st.integers(0, 1000), st.floats(0.1, 50), st.floats(0, 2 * math.pi),
       st.floats(-100, 100), st.floats(-100, 100))
def test_similarity_invariance(n, seed, scale, angle, dx, dy):
    p = np.random.default_rng(seed).random((n, 2))
    c, s = math.cos(angle), math.sin(angle)
    q = scale * p @ np.array([[c, -s], [s, c]]).T + [dx, dy]
    for kind in ("GG", "RNG", "EMST"):
        assert shape_graph(p, kind).edges == shape_graph(q, kind).edges


def test_coincident_points_mirror_representative():
    pts = [(0, 0), (1, 0), (1, 0), (2, 0)]
    g = gabriel(pts)
    # (1,0) is duplicated: both copies get the neighbourhood {0, 3} and join each other
    assert g.edges == ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3))
    assert set(emst(pts).edges) <= set(rng(pts).edges) <= set(g.edges)


def test_unknown_kind_and_serialisation(tmp_path):
    with pytest.raises(ValueError):
        shape_graph(SQUARE, "knn")
    out = tmp_path / "gg.txt"
    write_shape_graph(gabriel(SQUARE), out, ["a", "b", "c", "d"])
    lines = out.read_text().splitlines()
    assert lines[0] == "# kind: GG"
    assert "a b" in lines
