import numpy as np
import pytest

from capgeo import _kernels_py, _pieces, gallery, kernels


def _random_pieces(rng, n):
    rows = []
    for _ in range(n):
        if rng.random() < 0.5:
            x0, y0, x1, y1 = rng.uniform(-2, 2, 4)
            rows.append(_pieces.line(x0, y0, x1, y1))
        else:
            cx, cy = rng.uniform(-1, 1, 2)
            rows.append(_pieces.arc(cx, cy, rng.uniform(0.1, 2), rng.uniform(-np.pi, np.pi),
                                    rng.uniform(-2 * np.pi, 2 * np.pi)))
    return np.array(rows)


needs_compiled = pytest.mark.skipif("compiled" not in kernels.backends(), reason="extension not built")


def test_backend_is_named():
    assert kernels.BACKEND in ("compiled", "python")
    assert "python" in kernels.backends()


@needs_compiled
def test_nearest_parity():
    comp = kernels.backends()["compiled"]
    rng = np.random.default_rng(1)
    P = _random_pieces(rng, 40)
    pts = rng.uniform(-3, 3, (300, 2))
    a = _kernels_py.nearest(pts, P)
    b = comp.nearest(pts, P)
    for u, v in zip(a, b):
        np.testing.assert_allclose(u, v, atol=1e-13, rtol=0)


@needs_compiled
def test_winding_parity_on_domains():
    comp = kernels.backends()["compiled"]
    rng = np.random.default_rng(2)
    for name in ("pinocchio", "two_balls", "dumbbell", "stadium"):
        P = gallery.build(name).pieces
        pts = rng.uniform(-2, 3, (2000, 2))
        np.testing.assert_array_equal(_kernels_py.winding(pts, P), comp.winding(pts, P))


@needs_compiled
def test_intersect_parity():
    comp = kernels.backends()["compiled"]
    rng = np.random.default_rng(3)
    P = _random_pieces(rng, 30)
    pairs = np.array([(i, j) for i in range(30) for j in range(i + 1, 30)])
    ia, ta = _kernels_py.intersect(P, pairs, 1e-9)
    ib, tb = comp.intersect(P, pairs, 1e-9)
    np.testing.assert_array_equal(ia, ib)
    np.testing.assert_allclose(ta, tb, atol=1e-12)


def test_pruned_min_distance_matches_brute_force():
    rng = np.random.default_rng(4)
    P = gallery.make_ellipse(2, 1, 2000).pieces
    pts = rng.uniform(-2.5, 2.5, (5000, 2))
    d1, k1 = kernels.min_distance(pts, P)
    d2, k2 = kernels._impl.min_distance(pts, P)
    np.testing.assert_array_equal(d1, d2)
    np.testing.assert_array_equal(k1, k2)


def test_distance_at_least_matches_exact():
    rng = np.random.default_rng(5)
    P = gallery.make_ellipse(2, 1, 2000).pieces
    pts = rng.uniform(-2.5, 2.5, (5000, 2))
    exact, _ = kernels._impl.min_distance(pts, P)
    for r in (0.05, 0.3, 0.7):
        np.testing.assert_array_equal(kernels.distance_at_least(pts, P, r), exact >= r)


def test_line_and_arc_distances():
    line = _pieces.line(0, 0, 1, 0)[None]
    d, _ = kernels.min_distance(np.array([[0.5, 2.0], [2.0, 0.0], [-3.0, 4.0]]), line)
    np.testing.assert_allclose(d, [2.0, 1.0, 5.0])
    half = _pieces.arc(0, 0, 1, 0, np.pi)[None]
    d, _ = kernels.min_distance(np.array([[0, 0], [0, 3], [0, -1]]), half)
    np.testing.assert_allclose(d, [1.0, 2.0, np.sqrt(2)])
