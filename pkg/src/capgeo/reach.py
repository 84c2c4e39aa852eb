"""Weak and strict interior rolling-ball tests."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from capgeo import _pieces, kernels
from capgeo.geometry import DEFAULT_TOL, Domain, Point, Tolerance, _require_valid, sample_boundary
from capgeo.morphology import Region, erode, opening

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ContactSet:
    """Boundary points at distance r (within eps_geom) from a center z.

    ``intervals`` holds contact arcs as (start angle, signed sweep) seen from
    z; they occur when z is the center of a boundary arc of radius r.
    """

    center: Point
    contacts: tuple[Point, ...] = ()
    intervals: tuple[tuple[float, float], ...] = ()


def _check(d, r, tol):
    _require_valid(d, tol)
    if not (math.isfinite(r) and r > 0):
        raise ValueError(f"radius must be positive, got {r}")


def rolling_ball(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff d is r-open: area(d minus its r-opening) < eps_area."""
    _check(d, r, tol)
    return d.signed_area - opening(d, r, tol).area < tol.eps_area


def contacts_at(d: Domain, z, r: float, tol: Tolerance = DEFAULT_TOL) -> ContactSet:
    """Contact set of the circle of radius r around z with the boundary of d."""
    P = d.pieces
    zx, zy = float(z[0]), float(z[1])
    dist, nx, ny = kernels.nearest(np.array([[zx, zy]]), P)
    pts, ivs = [], []
    for k in np.nonzero(dist[0] <= r + tol.eps_geom)[0]:
        row = P[k]
        if (row[0] == _pieces.ARC and math.hypot(row[5] - zx, row[6] - zy) <= tol.eps_geom
                and abs(row[7] - r) <= tol.eps_geom):
            ivs.append((float(row[8]), float(row[9])))
        else:
            pts.append(Point(float(nx[0, k]), float(ny[0, k])))
    return ContactSet(Point(zx, zy), tuple(pts), tuple(ivs))


def _angle_gap(a, iv):
    """Angular distance from direction a to the arc interval iv."""
    start, sweep = iv
    lo = start if sweep >= 0 else start + sweep
    span = abs(sweep)
    off = (a - lo) % TWO_PI
    if off <= span:
        return 0.0
    return min(off - span, TWO_PI - off)


def antipodal_defect(cs: ContactSet, r: float) -> float:
    """Smallest |(x - z) + (y - z)| over contact pairs (inf with fewer than two)."""
    z = np.array(cs.center)
    best = math.inf
    vecs = [np.array(p) - z for p in cs.contacts]
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            best = min(best, float(np.hypot(*(vecs[i] + vecs[j]))))
    angles = [math.atan2(v[1], v[0]) for v in vecs]
    for iv in cs.intervals:
        # a pair inside one interval, or an interval against a point or another interval
        if abs(iv[1]) >= math.pi:
            return 0.0
        for a in angles:
            gap = _angle_gap(a + math.pi, iv)
            best = min(best, 2 * r * math.sin(0.5 * min(gap, math.pi)))
    for i, a in enumerate(cs.intervals):
        for b in cs.intervals[i + 1:]:
            lo = b[0] if b[1] >= 0 else b[0] + b[1]
            opp = (lo + math.pi, abs(b[1]))
            gap = min(_angle_gap(a[0], opp), _angle_gap(a[0] + a[1], opp),
                      _angle_gap(opp[0], a), _angle_gap(opp[0] + opp[1], a))
            best = min(best, 2 * r * math.sin(0.5 * min(gap, math.pi)))
    return best


def _centers(reg: Region, step: float):
    pts = [reg.points]
    for c in reg.components:
        if c.is_point:
            continue
        P = c.pieces
        lens = _pieces.lengths(P)
        pts.append(P[:, 1:3])
        for row, ell in zip(P, lens):
            m = int(ell // step)
            if m > 0:
                t = np.arange(1, m + 1) / (m + 1)
                pts.append(_pieces.points_at(np.repeat(row[None], m, axis=0), t))
    return np.concatenate(pts) if pts else np.zeros((0, 2))


@dataclass
class ReachReport:
    rolling: bool
    strict: bool
    worst_antipodal_defect: float
    centers_checked: int
    pointwise_rolling: bool
    warnings: list[str] = field(default_factory=list)

    def to_dict(self):
        return {"rolling": self.rolling, "strict": self.strict,
                "worst_antipodal_defect": self.worst_antipodal_defect,
                "centers_checked": self.centers_checked,
                "pointwise_rolling": self.pointwise_rolling,
                "warnings": list(self.warnings)}


def _worst_defect(d, centers, r, tol, chunk=256):
    P = d.pieces
    best = math.inf
    for lo in range(0, len(centers), chunk):
        block = centers[lo:lo + chunk]
        dist, _, _ = kernels.nearest(block, P)
        touching = dist <= r + tol.eps_geom
        for i in np.nonzero(touching.sum(axis=1) >= 2)[0]:
            cs = contacts_at(d, block[i], r, tol)
            best = min(best, antipodal_defect(cs, r))
        # a single concentric contact arc can hold an antipodal pair on its own
        for i in np.nonzero(touching.sum(axis=1) == 1)[0]:
            k = int(np.argmax(touching[i]))
            if P[k, 0] == _pieces.ARC and abs(P[k, 9]) >= math.pi:
                cs = contacts_at(d, block[i], r, tol)
                best = min(best, antipodal_defect(cs, r))
    return best


def reach_report(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> ReachReport:
    """Weak test by r-openness, strict test by sampled antipodal contacts.

    Also reports the pointwise surrogate (every boundary sample within r of
    the inner parallel set) and warns when it disagrees with the area test.
    """
    _check(d, r, tol)
    reg = erode(d, r, tol)
    open_reg = opening(d, r, tol)
    rolling = d.signed_area - open_reg.area < tol.eps_area
    warnings = []
    step = d.length / tol.n_samples
    centers = _centers(reg, step)
    worst = _worst_defect(d, centers, r, tol) if len(centers) else math.inf
    # pointwise surrogate
    bpts, _ = sample_boundary(d.pieces, tol.n_samples)
    dist = np.full(len(bpts), math.inf)
    if len(reg.pieces):
        dist, _ = kernels.min_distance(bpts, reg.pieces)
    if len(reg.points):
        dp = np.min(np.hypot(bpts[:, None, 0] - reg.points[None, :, 0],
                             bpts[:, None, 1] - reg.points[None, :, 1]), axis=1)
        dist = np.minimum(dist, dp)
    pointwise = bool(len(bpts) and np.all(dist <= r + tol.eps_geom))
    if pointwise != rolling:
        warnings.append("pointwise rolling test disagrees with the r-openness area test")
    strict = rolling and not (worst < tol.eps_geom)
    if strict and worst < 10 * tol.eps_geom:
        warnings.append(f"near-antipodal contacts (defect {worst:.3g}); strictness is marginal")
    return ReachReport(rolling, strict, worst, int(len(centers)), pointwise, warnings)


def strict_rolling_ball(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    """r-open and no rolling position touches the boundary at an antipodal pair."""
    if not rolling_ball(d, r, tol):
        return False
    return reach_report(d, r, tol).strict
