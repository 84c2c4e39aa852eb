import math

import numpy as np
import pytest

import oracles
from capgeo import gallery
from capgeo.convex import (NotConvexError, curvature_profile, giusti_criterion, is_convex, kappa_bar,
                           support_function)


def test_convexity():
    for name in ("disk", "square", "stadium", "ellipse", "rounded_rect"):
        assert is_convex(gallery.build(name)), name
    for name in ("pinocchio", "two_balls", "dumbbell"):
        assert not is_convex(gallery.build(name)), name


def test_support_function_of_disk():
    sf = support_function(gallery.make_disk(2.0), 256)
    np.testing.assert_allclose(sf.p, 2.0, atol=1e-14)
    assert sf.perimeter() == pytest.approx(4 * math.pi, abs=1e-12)


def test_support_function_of_square():
    sf = support_function(gallery.make_square(1.0), 64)
    th = sf.thetas
    expect = np.maximum.reduce([0 * th, np.cos(th), np.sin(th), np.cos(th) + np.sin(th)])
    np.testing.assert_allclose(sf.p, expect, atol=1e-15)


def test_boundary_points_of_disk():
    sf = support_function(gallery.make_disk(1.0, (0.5, -0.25)), 128)
    pts = sf.boundary_points()
    np.testing.assert_allclose(np.hypot(pts[:, 0] - 0.5, pts[:, 1] + 0.25), 1.0, atol=1e-3)


def test_kappa_bar_values():
    assert kappa_bar(gallery.make_disk(1.0)) == pytest.approx(1.0, rel=1e-6)
    assert kappa_bar(gallery.make_square()) == math.inf
    assert kappa_bar(gallery.make_stadium()) == pytest.approx(1.0, rel=1e-6)
    assert kappa_bar(gallery.make_rounded_rect(2, 1, 0.25)) == pytest.approx(4.0, rel=1e-6)


def test_ellipse_against_curvature_formula():
    kb = kappa_bar(gallery.make_ellipse(2, 1, 4096), 4096)
    assert kb == pytest.approx(oracles.ellipse_max_curvature(2, 1), rel=0.02)


def test_polygon_profile_vanishes_between_vertex_normals():
    prof = curvature_profile(support_function(gallery.make_square(), 64))
    rho = np.array(prof.rho)
    assert np.max(np.abs(rho[1:16])) < 1e-12


def test_curvature_criterion():
    assert giusti_criterion(gallery.make_disk())
    assert giusti_criterion(gallery.make_stadium())
    assert not giusti_criterion(gallery.make_square())
    assert not giusti_criterion(gallery.make_ellipse())
    with pytest.raises(NotConvexError):
        giusti_criterion(gallery.pinocchio())


def test_support_function_size_checks():
    with pytest.raises(ValueError):
        support_function(gallery.make_disk(), 63)
