import math

import pytest

import oracles
from capgeo import gallery
from capgeo.cheeger import NeckError, cheeger_constant, classify, inner_cheeger_radius, maximal_cheeger_set
from capgeo.convex import is_convex


def test_disk():
    assert inner_cheeger_radius(gallery.make_disk()) == pytest.approx(0.5, abs=1e-9)
    h, valid = cheeger_constant(gallery.make_disk())
    assert valid and h == pytest.approx(2.0, abs=1e-8)


def test_square_against_scalar_root():
    r = inner_cheeger_radius(gallery.make_square())
    assert r == pytest.approx(oracles.square_inner_cheeger_radius(), abs=1e-9)
    assert r == pytest.approx(0.265079452134, abs=1e-9)


def test_stadium_against_scalar_root():
    r = inner_cheeger_radius(gallery.make_stadium())
    assert r == pytest.approx(oracles.stadium_inner_cheeger_radius(), abs=1e-9)


def test_square_cheeger_set():
    cset = maximal_cheeger_set(gallery.make_square())
    assert len(cset) == 1
    assert cset.area == pytest.approx(oracles.square_cheeger_area(), abs=1e-8)
    assert is_convex(cset.components[0])


def test_scaling_law():
    d = gallery.make_square()
    r1 = inner_cheeger_radius(d)
    assert inner_cheeger_radius(d.scaled(3.0)) == pytest.approx(3 * r1, abs=1e-8)


def test_neck_refused():
    d = gallery.make_dumbbell()
    h, valid = cheeger_constant(d)
    assert not valid
    with pytest.raises(NeckError):
        maximal_cheeger_set(d)
    res = classify(d)
    assert not res.no_neck_valid and res.notes


def test_classify_disk_and_square():
    res = classify(gallery.make_disk())
    assert res.self_cheeger and res.minimal
    assert res.h * res.r_star == pytest.approx(1.0, abs=1e-12)
    res = classify(gallery.make_square())
    assert not res.self_cheeger and not res.minimal
    # isoperimetric lower bound
    assert res.h >= 2 * math.sqrt(math.pi / 1.0)


def test_classify_pinocchio():
    res = classify(gallery.pinocchio())
    assert res.self_cheeger and not res.minimal
    assert abs(res.h - 1 / res.r_phys) <= 1e-9 * res.h


def test_result_dict():
    keys = list(classify(gallery.make_disk()).to_dict())
    assert keys[:3] == ["r_star", "h", "r_phys"]
