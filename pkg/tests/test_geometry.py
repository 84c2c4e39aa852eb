import json
import math

import numpy as np
import pytest

from capgeo import gallery
from capgeo.geometry import (Domain, InvalidDomainError, Segment, Tolerance, area, inside, perimeter,
                             quotient, sample_boundary, signed_distance, validate)


def test_disk_area_and_perimeter_exact():
    d = gallery.make_disk(1.5)
    assert area(d) == pytest.approx(math.pi * 2.25, abs=1e-14)
    assert perimeter(d) == pytest.approx(3 * math.pi, abs=1e-14)
    assert quotient(d) == pytest.approx(2 / 1.5, abs=1e-14)


def test_square_and_stadium():
    assert area(gallery.make_square(2.0)) == pytest.approx(4.0, abs=1e-15)
    st = gallery.make_stadium(1.0, 2.0)
    assert area(st) == pytest.approx(math.pi + 4, abs=1e-13)
    assert perimeter(st) == pytest.approx(2 * math.pi + 4, abs=1e-13)


def test_arc_orientation_sign():
    # half disk traversed with a cw arc encloses negative area
    cw = Domain((1, 0), (Segment("arc", (-1, 0), (0, 0), "cw"), Segment("line", (1, 0))))
    assert cw.signed_area == pytest.approx(-math.pi / 2)
    diag = validate(cw)
    assert not diag.ok and diag.violation == "orientation"


def test_validate_reports_each_violation():
    open_curve = Domain((0, 0), (Segment("line", (1, 0)), Segment("line", (1, 1))))
    assert validate(open_curve).violation == "closure"
    bowtie = gallery.make_polygon([(0, 0), (1, 1), (1, 0), (0, 1)])
    assert validate(bowtie).violation == "simplicity"
    bad_arc = Domain((1, 0), (Segment("arc", (-2, 0), (0, 0), "ccw"), Segment("line", (1, 0))))
    assert validate(bad_arc).violation == "segment"
    assert validate(Domain.point(0, 0)).violation == "degenerate"


def test_closure_uses_eps_geom():
    tol = Tolerance(eps_geom=1e-7)
    almost = Domain((0, 0), (Segment("line", (1, 0)), Segment("line", (0, 1)), Segment("line", (5e-8, 0))))
    assert validate(almost, tol).ok
    gap = Domain((0, 0), (Segment("line", (1, 0)), Segment("line", (0, 1)), Segment("line", (5e-7, 0))))
    assert not validate(gap, tol).ok


def test_invalid_domain_raises_in_operations():
    bowtie = gallery.make_polygon([(0, 0), (1, 1), (1, 0), (0, 1)])
    with pytest.raises(InvalidDomainError):
        area(bowtie)


def test_signed_distance_convention():
    d = gallery.make_disk(1.0)
    assert signed_distance(d, (0, 0)) == pytest.approx(-1.0)
    assert signed_distance(d, (2, 0)) == pytest.approx(1.0)
    assert signed_distance(d, (1, 0)) == 0.0
    sq = gallery.make_square(1.0)
    assert signed_distance(sq, (0.5, 0.2)) == pytest.approx(-0.2)
    assert signed_distance(sq, (2, 2)) == pytest.approx(math.sqrt(2))


def test_inside_winding():
    d = gallery.pinocchio()
    mask = inside(d, [(0, 0), (1.5, 0), (0, 1.5), (3, 0)])
    assert mask.tolist() == [True, True, False, False]


def test_json_round_trip_is_exact():
    for name in gallery.FAMILIES:
        d = gallery.build(name)
        text = json.dumps(d.to_json())
        assert Domain.from_json(json.loads(text)) == d


def test_from_json_rejects_malformed():
    with pytest.raises(ValueError):
        Domain.from_json({"start": [0, 0]})
    with pytest.raises(ValueError):
        Domain.from_json({"start": [0, 0], "segments": [{"kind": "spline", "end": [1, 1]}]})
    with pytest.raises(ValueError):
        Domain.from_json({"start": [0, 0], "segments": [{"kind": "arc", "end": [1, 1]}]})


def test_rigid_motions_preserve_measures():
    d = gallery.pinocchio()
    moved = d.rotated(0.7).translated(3, -2)
    assert moved.signed_area == pytest.approx(d.signed_area, abs=1e-12)
    assert moved.length == pytest.approx(d.length, abs=1e-12)
    big = d.scaled(2.5)
    assert big.signed_area == pytest.approx(6.25 * d.signed_area, rel=1e-13)


def test_sample_boundary_weights_sum_to_length():
    d = gallery.make_stadium()
    pts, w = sample_boundary(d.pieces, 1000)
    assert w.sum() == pytest.approx(d.length, rel=1e-13)
    assert len(pts) >= 1000
    dist = np.abs([signed_distance(d, p) for p in pts[::50]])
    assert dist.max() < 1e-12


def test_tolerance_rejects_nonsense():
    with pytest.raises(ValueError):
        Tolerance(eps_geom=0)
    with pytest.raises(ValueError):
        Tolerance(eps_geom=1e-3, eps_area=1e-8)
