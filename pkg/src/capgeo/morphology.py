"""Inner parallel sets, disk dilation, opening and the no-neck predicate."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from capgeo import _arrangement, _pieces, kernels
from capgeo.geometry import DEFAULT_TOL, Domain, Tolerance, _require_valid

log = logging.getLogger(__name__)

# turns smaller than this (radians) are treated as tangent joins
_ANG_EPS = 1e-12


@dataclass(frozen=True)
class Region:
    """Finite union of domains with disjoint interiors.

    Components may be degenerate: single points or zero-width walks (an
    antenna of the inner parallel set).  ``holes`` are clockwise boundary
    loops produced by dilation; they are subtracted from the area.
    """

    components: tuple[Domain, ...] = ()
    holes: tuple[Domain, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def is_empty(self):
        return len(self.components) == 0

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @cached_property
    def area(self):
        a = sum(c.signed_area for c in self.components if not c.is_point)
        a -= sum(abs(h.signed_area) for h in self.holes)
        return float(a)

    @cached_property
    def pieces(self):
        rows = [c.pieces for c in self.components if not c.is_point]
        rows += [h.pieces for h in self.holes]
        return np.concatenate(rows) if rows else _pieces.empty()

    @cached_property
    def points(self):
        pts = [c.start for c in self.components if c.is_point]
        return np.array(pts, dtype=float).reshape(-1, 2)

    def degenerate(self, tol: Tolerance = DEFAULT_TOL):
        """Per-component flag: area below eps_area."""
        return [c.is_point or c.signed_area < tol.eps_area for c in self.components]

    def contains(self, pts):
        """Winding-number membership (points on the boundary are ambiguous)."""
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        if len(self.pieces) == 0:
            return np.zeros(len(pts), dtype=bool)
        return kernels.winding(pts, self.pieces) != 0

    def to_json(self):
        return {"components": [c.to_json() for c in self.components],
                "holes": [h.to_json() for h in self.holes]}


def _check_radius(r):
    if not math.isfinite(r) or r < 0:
        raise ValueError(f"radius must be a finite non-negative number, got {r}")


def _junctions(walk):
    """(vertex, incoming tangent, turn angle) at the end of each piece."""
    n = len(walk)
    t_in = _pieces.tangents(walk, 1.0)
    t_out = _pieces.tangents(walk[np.r_[1:n, 0]], 0.0)
    out = []
    for k in range(n):
        turn = _pieces.turn_angle(t_in[k], t_out[k])
        out.append(((walk[k, 3], walk[k, 4]), t_in[k], turn))
    return out


def _assemble(sub, eps):
    """Trace kept sub-pieces into one closed walk per connected component."""
    comps = _arrangement.trace(sub, eps)
    walks = []
    for faces in comps:
        walk = _arrangement.splice(faces, eps)
        walks.append(walk)
    return walks


def _is_junk(walk, tol):
    return (abs(_pieces.area(walk)) < tol.eps_area
            and float(np.sum(_pieces.lengths(walk))) < 10 * tol.eps_geom)


def _dedupe_points(pts, eps):
    if not pts:
        return []
    pts = np.array(pts, dtype=float).reshape(-1, 2)
    labels = _arrangement.cluster_points(pts, eps)
    out = []
    for lab in range(labels.max() + 1):
        out.append(pts[labels == lab].mean(axis=0))
    return out


def _point_segment_distance(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    t = np.clip(((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0)
    return np.hypot(px - ax - t * dx, py - ay - t * dy)


def _buried_lines(P, r, reach=64):
    """Line pieces whose whole left offset lies closer than r to a nearby line piece.

    The set of points within r of a segment is convex, so both offset
    endpoints being inside it buries the whole offset segment; such offsets
    can only ever be trimmed away.  Only the ``reach`` neighbours on either
    side along the curve are tried, which is where offsets fold over.
    """
    n = len(P)
    lines = P[:, 0] == _pieces.LINE
    buried = np.zeros(n, dtype=bool)
    if n < 3:
        return buried
    dx, dy = P[:, 3] - P[:, 1], P[:, 4] - P[:, 2]
    ll = np.hypot(dx, dy)
    with np.errstate(invalid="ignore", divide="ignore"):
        nx, ny = -dy / ll, dx / ll
    ax, ay = P[:, 1] + r * nx, P[:, 2] + r * ny
    bx, by = P[:, 3] + r * nx, P[:, 4] + r * ny
    idx = np.arange(n)
    for shift in range(1, min(reach, n - 1) + 1):
        for j in ((idx + shift) % n, (idx - shift) % n):
            ok = lines & lines[j]
            da = _point_segment_distance(ax, ay, P[j, 1], P[j, 2], P[j, 3], P[j, 4])
            db = _point_segment_distance(bx, by, P[j, 1], P[j, 2], P[j, 3], P[j, 4])
            buried |= ok & (np.maximum(da, db) < r)
    return buried


def erode(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> Region:
    """Inner parallel set {x in d : dist(x, boundary) >= r} split into components.

    Offsets every boundary piece inward, closes reflex vertices with arcs,
    trims every sub-piece that comes closer than r to the boundary and traces
    the survivors.  Degenerate components (isolated points, zero-width
    antennas) are kept; only numerical debris is discarded.
    """
    _require_valid(d, tol)
    _check_radius(r)
    eps = tol.eps_geom
    if r <= eps:
        # an offset this small is indistinguishable from the boundary itself
        return Region((d,))
    P = d.pieces
    offs, collapsed = _pieces.offset(P[~_buried_lines(P, r - eps)], r, eps)
    joins = []
    for (vx, vy), t, turn in _junctions(P):
        if turn < -_ANG_EPS and r * -turn > 0.1 * eps:
            phi0 = math.atan2(t[0], -t[1])
            joins.append(_pieces.arc(vx, vy, r, phi0, turn))
    cand = np.concatenate([offs, np.array(joins).reshape(-1, 10)])
    sub, hits = _arrangement.split(cand, eps)
    kept = _pieces.empty()
    if len(sub):
        mids = _pieces.midpoints(sub)
        ok = kernels.distance_at_least(mids, P, r - eps)
        ok[ok] = kernels.winding(mids[ok], P) != 0
        kept = sub[ok]
    walks, specks = [], []
    for w in _assemble(kept, eps):
        (specks if _is_junk(w, tol) else walks).append(w)
    comps = [Domain.from_pieces(w) for w in walks]
    notes = []

    # isolated points: collapsed arc centers, crossings at full distance and
    # closed walks too small to carry a curve
    pts = list(collapsed) + [tuple(w[0, 1:3]) for w in specks]
    if len(hits):
        pts += [tuple(h) for h in hits[kernels.distance_at_least(hits, P, r - eps)]]
    pts = _dedupe_points(pts, eps)
    if pts:
        arr = np.array(pts)
        ok = kernels.distance_at_least(arr, P, r - eps) & (kernels.winding(arr, P) != 0)
        big = np.concatenate(walks) if walks else _pieces.empty()
        if len(big):
            ok &= kernels.distance_at_least(arr, big, 10 * eps)
        for p in arr[ok]:
            comps.append(Domain.point(float(p[0]), float(p[1])))
    if any(c.is_point or c.signed_area < tol.eps_area for c in comps):
        notes.append("degenerate component kept (point or zero-width)")
    return Region(tuple(comps), (), tuple(notes))


def _right_candidates(walk, r, eps):
    """Outward offsets of one closed walk plus convex-vertex and cusp circles."""
    offs, collapsed = _pieces.offset(walk, -r, eps)
    extra = []
    for (vx, vy), t, turn in _junctions(walk):
        if abs(abs(turn) - math.pi) < 1e-6:
            extra.append(_pieces.arc(vx, vy, r, 0.0, 2 * math.pi))
        elif turn > _ANG_EPS and r * turn > 0.1 * eps:
            phi0 = math.atan2(-t[0], t[1])
            extra.append(_pieces.arc(vx, vy, r, phi0, turn))
    for cx, cy in collapsed:
        extra.append(_pieces.arc(cx, cy, r, 0.0, 2 * math.pi))
    return np.concatenate([offs, np.array(extra).reshape(-1, 10)])


def dilate(reg: Region, r: float, tol: Tolerance = DEFAULT_TOL) -> Region:
    """Minkowski sum of the region with the closed disk of radius r."""
    _check_radius(r)
    eps = tol.eps_geom
    if r <= eps or reg.is_empty:
        return reg
    cands = []
    X = reg.pieces
    pts = reg.points
    for c in reg.components:
        if c.is_point:
            cands.append(_pieces.arc(c.start.x, c.start.y, r, 0.0, 2 * math.pi)[None, :])
        else:
            cands.append(_right_candidates(c.pieces, r, eps))
    for h in reg.holes:
        cands.append(_right_candidates(h.pieces, r, eps))
    cand = np.concatenate(cands)
    sub, _ = _arrangement.split(cand, eps)
    kept = _pieces.empty()
    if len(sub):
        mids = _pieces.midpoints(sub)
        ok = kernels.distance_at_least(mids, X, r - eps)
        if len(pts):
            dp = np.min(np.hypot(mids[:, None, 0] - pts[None, :, 0],
                                 mids[:, None, 1] - pts[None, :, 1]), axis=1)
            ok &= dp >= r - eps
        if len(X):
            ok &= kernels.winding(mids, X) == 0
        # boundary pieces sit at distance exactly r; circles around collapsed
        # concave arcs can otherwise leave phantom loops further out
        idx = np.flatnonzero(ok)
        if len(idx):
            near = np.full(len(idx), math.inf)
            if len(X):
                near, _ = kernels.min_distance(mids[idx], X)
            if len(pts):
                near = np.minimum(near, np.min(np.hypot(mids[idx, None, 0] - pts[None, :, 0],
                                                        mids[idx, None, 1] - pts[None, :, 1]), axis=1))
            ok[idx[near > r + eps]] = False
        kept = sub[ok]
    comps, holes = [], []
    for w in _assemble(kept, eps):
        if _is_junk(w, tol):
            continue
        a = _pieces.area(w)
        (comps if a > 0 else holes).append(Domain.from_pieces(w))
    notes = ("dilation enclosed a hole",) if holes else ()
    return Region(tuple(comps), tuple(holes), notes)


def opening(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> Region:
    """Union of all closed r-disks inside d, i.e. dilate(erode(d, r), r)."""
    return dilate(erode(d, r, tol), r, tol)


@dataclass(frozen=True)
class NeckReport:
    no_neck: bool
    n_components: int
    empty: bool
    degenerate: tuple[bool, ...]
    message: str = ""

    def __bool__(self):
        return self.no_neck


def neck_report(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> NeckReport:
    reg = erode(d, r, tol)
    n = len(reg)
    if n == 0:
        return NeckReport(True, 0, True, (), "inner parallel set is empty; vacuously connected")
    deg = tuple(reg.degenerate(tol))
    msg = ""
    if any(deg):
        msg = "degenerate components counted for path-connectedness"
    return NeckReport(n == 1, n, False, deg, msg)


def has_no_neck(d: Domain, r: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the inner parallel set at distance r is path connected."""
    return neck_report(d, r, tol).no_neck


def inradius(d: Domain, tol: Tolerance = DEFAULT_TOL) -> float:
    """Largest r with a nonempty inner parallel set, by bisection."""
    _require_valid(d, tol)
    lo = 0.0
    hi = math.sqrt(d.signed_area / math.pi) * (1 + 1e-6) + 10 * tol.eps_geom
    for _ in range(100):
        if hi - lo <= tol.eps_root:
            break
        mid = 0.5 * (lo + hi)
        if erode(d, mid, tol).is_empty:
            hi = mid
        else:
            lo = mid
    return lo
