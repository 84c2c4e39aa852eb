"""Piecewise line/arc Jordan domains and their exact measures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from capgeo import _pieces, kernels

TWO_PI = 2.0 * math.pi


class InvalidDomainError(ValueError):
    """Raised when an operation needs a valid domain and gets something else."""


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerance:
    """Numerical knobs shared by every operation.

    ``eps_geom`` decides point coincidence, on-boundary tests and closure;
    ``eps_area`` decides set equality through symmetric-difference area;
    ``eps_root`` is the bisection tolerance; ``n_samples`` the boundary
    sampling density.
    """

    eps_geom: float = 1e-7
    eps_area: float = 1e-8
    eps_root: float = 1e-9
    n_samples: int = 4096

    def __post_init__(self):
        for name in ("eps_geom", "eps_area", "eps_root", "n_samples"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.eps_area < self.eps_geom ** 2:
            raise ValueError("eps_area must be at least eps_geom**2")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Segment:
    kind: str
    end: Point
    center: Point | None = None
    orientation: str | None = None

    def __post_init__(self):
        if self.kind not in ("line", "arc"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        object.__setattr__(self, "end", Point(float(self.end[0]), float(self.end[1])))
        if self.kind == "arc":
            if self.center is None or self.orientation not in ("ccw", "cw"):
                raise ValueError("arc segments need a center and an orientation")
            object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    violation: str | None = None
    location: Point | None = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, "violation": self.violation,
                "location": None if self.location is None else list(self.location),
                "message": self.message}


def _arc_row(start, seg):
    cx, cy = seg.center
    r0 = math.hypot(start[0] - cx, start[1] - cy)
    r1 = math.hypot(seg.end[0] - cx, seg.end[1] - cy)
    radius = 0.5 * (r0 + r1)
    phi0 = math.atan2(start[1] - cy, start[0] - cx)
    phi1 = math.atan2(seg.end[1] - cy, seg.end[0] - cx)
    if seg.orientation == "ccw":
        sweep = (phi1 - phi0) % TWO_PI
        if sweep * radius <= 1e-12 * max(1.0, radius):
            sweep = TWO_PI
    else:
        sweep = -((phi0 - phi1) % TWO_PI)
        if -sweep * radius <= 1e-12 * max(1.0, radius):
            sweep = -TWO_PI
    row = _pieces.arc(cx, cy, radius, phi0, sweep)
    # keep the declared endpoints exactly
    row[1:5] = (start[0], start[1], seg.end[0], seg.end[1])
    return row, abs(r0 - r1)


@dataclass(frozen=True)
class Domain:
    """A closed, counterclockwise, piecewise line/arc curve.

    A domain with no segments is a single point; such degenerate domains only
    appear as components of inner parallel sets.
    """

    start: Point
    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "start", Point(float(self.start[0]), float(self.start[1])))
        object.__setattr__(self, "segments", tuple(self.segments))

    @classmethod
    def from_pieces(cls, pieces):
        """Build a domain from an ordered piece array, keeping it as the cache."""
        pieces = np.asarray(pieces, dtype=float).reshape(-1, 10)
        if len(pieces) == 0:
            raise ValueError("need at least one piece")
        segs = []
        for row in pieces:
            end = Point(row[3], row[4])
            if row[0] == _pieces.LINE:
                segs.append(Segment("line", end))
            else:
                segs.append(Segment("arc", end, Point(row[5], row[6]),
                                    "ccw" if row[9] > 0 else "cw"))
        d = cls(Point(pieces[0, 1], pieces[0, 2]), tuple(segs))
        d.__dict__["pieces"] = pieces.copy()
        return d

    @classmethod
    def point(cls, x, y):
        return cls(Point(x, y), ())

    @property
    def is_point(self):
        return len(self.segments) == 0

    @cached_property
    def pieces(self):
        rows = []
        cur = self.start
        for seg in self.segments:
            if seg.kind == "line":
                rows.append(_pieces.line(cur[0], cur[1], seg.end[0], seg.end[1]))
            else:
                rows.append(_arc_row(cur, seg)[0])
            cur = seg.end
        return np.array(rows, dtype=float).reshape(-1, 10)

    @cached_property
    def signed_area(self):
        return _pieces.area(self.pieces)

    @cached_property
    def length(self):
        return float(np.sum(_pieces.lengths(self.pieces)))

    @cached_property
    def bbox(self):
        if self.is_point:
            return (self.start.x, self.start.y, self.start.x, self.start.y)
        b = _pieces.bboxes(self.pieces)
        return (float(b[:, 0].min()), float(b[:, 1].min()), float(b[:, 2].max()), float(b[:, 3].max()))

    def vertices(self):
        return [self.start] + [s.end for s in self.segments[:-1]]

    def transformed(self, fn):
        """Apply a similarity map ``fn(x, y) -> (x, y)`` to every point.

        Orientation-reversing maps are not supported.
        """
        segs = []
        for s in self.segments:
            if s.kind == "line":
                segs.append(Segment("line", fn(*s.end)))
            else:
                segs.append(Segment("arc", fn(*s.end), fn(*s.center), s.orientation))
        return Domain(fn(*self.start), tuple(segs))

    def translated(self, dx, dy):
        return self.transformed(lambda x, y: (x + dx, y + dy))

    def scaled(self, factor, origin=(0.0, 0.0)):
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        ox, oy = origin
        return self.transformed(lambda x, y: (ox + factor * (x - ox), oy + factor * (y - oy)))

    def rotated(self, angle, origin=(0.0, 0.0)):
        c, s = math.cos(angle), math.sin(angle)
        ox, oy = origin
        return self.transformed(lambda x, y: (ox + c * (x - ox) - s * (y - oy),
                                              oy + s * (x - ox) + c * (y - oy)))

    def to_json(self):
        segs = []
        for s in self.segments:
            if s.kind == "line":
                segs.append({"kind": "line", "end": [s.end.x, s.end.y]})
            else:
                segs.append({"kind": "arc", "end": [s.end.x, s.end.y],
                             "center": [s.center.x, s.center.y],
                             "orientation": s.orientation})
        return {"start": [self.start.x, self.start.y], "segments": segs}

    @classmethod
    def from_json(cls, obj):
        try:
            start = obj["start"]
            segs = []
            for s in obj["segments"]:
                if s["kind"] == "line":
                    segs.append(Segment("line", tuple(s["end"])))
                else:
                    segs.append(Segment("arc", tuple(s["end"]), tuple(s["center"]), s["orientation"]))
            if len(start) != 2 or not all(math.isfinite(v) for v in start):
                raise ValueError("start must be two finite numbers")
            return cls(tuple(start), tuple(segs))
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed domain JSON: {exc}") from exc


def _crossings(pieces, eps):
    """Intersections between segments that are not shared consecutive endpoints."""
    n = len(pieces)
    pairs = _pieces.candidate_pairs(pieces, eps)
    if len(pairs) == 0:
        return []
    ij, tt = kernels.intersect(pieces, pairs, eps)
    bad = []
    lens = _pieces.lengths(pieces)
    for (i, j), (ti, tj) in zip(ij, tt):
        i, j = int(i), int(j)
        # a consecutive pair may only meet at its shared vertex
        si = eps / lens[i]
        sj = eps / lens[j]
        if j == (i + 1) % n and ti >= 1.0 - si and tj <= sj:
            continue
        if i == (j + 1) % n and tj >= 1.0 - sj and ti <= si:
            continue
        bad.append((i, j, ti))
    return bad


def validate(d: Domain, tol: Tolerance = DEFAULT_TOL) -> Diagnostics:
    """Check closure, arc consistency, simplicity and orientation, in that order."""
    eps = tol.eps_geom
    if d.is_point:
        return Diagnostics(False, "degenerate", d.start, "domain has no segments")
    for v in [d.start] + [s.end for s in d.segments]:
        if not (math.isfinite(v[0]) and math.isfinite(v[1])):
            return Diagnostics(False, "non_finite", None, "non-finite coordinate")
    last = d.segments[-1].end
    gap = math.hypot(last[0] - d.start[0], last[1] - d.start[1])
    if gap > eps:
        return Diagnostics(False, "closure", Point(*last), f"curve does not close (gap {gap:.3g})")
    cur = d.start
    for k, s in enumerate(d.segments):
        if s.kind == "line":
            if math.hypot(s.end[0] - cur[0], s.end[1] - cur[1]) <= eps:
                return Diagnostics(False, "segment", Point(*cur), f"segment {k} has zero length")
        else:
            _, mismatch = _arc_row(cur, s)
            if mismatch > eps:
                return Diagnostics(False, "segment", Point(*cur),
                                   f"arc {k} endpoints are not equidistant from its center")
            if math.hypot(s.end[0] - s.center[0], s.end[1] - s.center[1]) <= eps:
                return Diagnostics(False, "segment", Point(*cur), f"arc {k} has zero radius")
        cur = s.end
    pieces = d.pieces
    bad = _crossings(pieces, eps)
    if bad:
        i, j, ti = bad[0]
        loc = _pieces.points_at(pieces[i:i + 1], ti)[0]
        return Diagnostics(False, "simplicity", Point(float(loc[0]), float(loc[1])),
                           f"segments {i} and {j} intersect")
    a = _pieces.area(pieces)
    if a <= 0.0:
        return Diagnostics(False, "orientation", d.start,
                           f"signed area {a:.6g} is not positive (clockwise curve)")
    return Diagnostics(True)


def _require_valid(d, tol=DEFAULT_TOL):
    cache = d.__dict__.setdefault("_validity", {})
    diag = cache.get(tol)
    if diag is None:
        diag = validate(d, tol)
        cache[tol] = diag
    if not diag.ok:
        raise InvalidDomainError(f"invalid domain: {diag.violation}: {diag.message}")


def area(d: Domain) -> float:
    _require_valid(d)
    return d.signed_area


def perimeter(d: Domain) -> float:
    _require_valid(d)
    return d.length


def quotient(d: Domain) -> float:
    """Perimeter over area."""
    _require_valid(d)
    return d.length / d.signed_area


def inside(d: Domain, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return kernels.winding(pts, d.pieces) != 0


def signed_distance_many(d: Domain, points, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    dist, _ = kernels.min_distance(pts, d.pieces)
    sign = np.where(kernels.winding(pts, d.pieces) != 0, -1.0, 1.0)
    out = sign * dist
    out[dist <= tol.eps_geom] = 0.0
    return out


def signed_distance(d: Domain, p, tol: Tolerance = DEFAULT_TOL) -> float:
    """Distance to the boundary curve; negative inside, zero on the curve."""
    _require_valid(d, tol)
    return float(signed_distance_many(d, [p], tol)[0])


def sample_boundary(pieces, n):
    """About ``n`` points spread along the pieces by arclength.

    Returns ``(points, weights)`` with midpoint-rule arclength weights.
    """
    pieces = np.asarray(pieces).reshape(-1, 10)
    lens = _pieces.lengths(pieces)
    total = float(lens.sum())
    if total == 0.0:
        return np.zeros((0, 2)), np.zeros(0)
    pts = []
    wts = []
    for row, ell in zip(pieces, lens):
        m = max(1, int(math.ceil(n * ell / total)))
        t = (np.arange(m) + 0.5) / m
        rows = np.repeat(row[None, :], m, axis=0)
        pts.append(_pieces.points_at(rows, t))
        wts.append(np.full(m, ell / m))
    return np.concatenate(pts), np.concatenate(wts)
