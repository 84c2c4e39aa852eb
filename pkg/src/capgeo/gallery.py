"""Exact constructors for the example families and the Pinocchio angle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from capgeo.geometry import DEFAULT_TOL, Domain, Point, Segment, Tolerance


def _positive(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be positive, got {v}")


def _line(x, y):
    return Segment("line", Point(x, y))


def _arc(x, y, cx, cy, orientation="ccw"):
    return Segment("arc", Point(x, y), Point(cx, cy), orientation)


def make_disk(R: float = 1.0, center=(0.0, 0.0)) -> Domain:
    """Disk of radius R from two half arcs."""
    _positive(R=R)
    cx, cy = center
    return Domain(Point(cx + R, cy), (_arc(cx - R, cy, cx, cy), _arc(cx + R, cy, cx, cy)))


def make_square(a: float = 1.0, origin=(0.0, 0.0)) -> Domain:
    """Axis-aligned square [x0, x0 + a] x [y0, y0 + a]."""
    _positive(a=a)
    x0, y0 = origin
    return Domain(Point(x0, y0), (_line(x0 + a, y0), _line(x0 + a, y0 + a),
                                  _line(x0, y0 + a), _line(x0, y0)))


def make_polygon(vertices) -> Domain:
    """Closed polygon through the given vertices (counterclockwise expected)."""
    vs = [Point(float(x), float(y)) for x, y in vertices]
    if len(vs) < 3:
        raise ValueError("a polygon needs at least three vertices")
    return Domain(vs[0], tuple(_line(*v) for v in vs[1:] + vs[:1]))


def make_stadium(R: float = 1.0, L: float = 2.0) -> Domain:
    """Rectangle [-L/2, L/2] x [-R, R] capped by half-disks of radius R."""
    _positive(R=R, L=L)
    h = 0.5 * L
    return Domain(Point(-h, -R), (_line(h, -R), _arc(h, R, h, 0.0),
                                  _line(-h, R), _arc(-h, -R, -h, 0.0)))


def make_rounded_rect(width: float, height: float, radius: float) -> Domain:
    """Rectangle centered at the origin with corners filleted at ``radius``."""
    _positive(width=width, height=height, radius=radius)
    w, h = 0.5 * width, 0.5 * height
    if radius > min(w, h):
        raise ValueError("corner radius exceeds half the shorter side")
    r = radius
    corners = [(w - r, -h + r, 0.0), (w - r, h - r, 0.5 * math.pi),
               (-w + r, h - r, math.pi), (-w + r, -h + r, 1.5 * math.pi)]
    start = Point(-w + r, -h)
    segs = []
    cur = start
    for cx, cy, a in corners:
        sx, sy = cx + r * math.cos(a - 0.5 * math.pi), cy + r * math.sin(a - 0.5 * math.pi)
        if math.hypot(sx - cur[0], sy - cur[1]) > 1e-12 * (1 + w + h):
            segs.append(_line(sx, sy))
        ex, ey = cx + r * math.cos(a), cy + r * math.sin(a)
        if a == 1.5 * math.pi and math.hypot(ex - start.x, ey - start.y) <= 1e-12 * (1 + w + h):
            ex, ey = start.x, start.y  # the last fillet closes the curve
        segs.append(_arc(ex, ey, cx, cy))
        cur = segs[-1].end
    if tuple(cur) != tuple(start):
        segs.append(_line(start.x, start.y))
    return Domain(start, tuple(segs))


def make_ellipse(a: float = 2.0, b: float = 1.0, n: int = 4096) -> Domain:
    """Polygon inscribed in the ellipse x^2/a^2 + y^2/b^2 = 1.

    Vertices sit at uniformly spaced outward-normal angles, so the polygon's
    support function samples the ellipse's exactly at those angles.  The
    area error decays like n^-2.
    """
    _positive(a=a, b=b)
    if n < 64:
        raise ValueError("ellipse needs n >= 64")
    th = 2 * math.pi * np.arange(n) / n
    den = np.sqrt(a * a * np.cos(th) ** 2 + b * b * np.sin(th) ** 2)
    xs = a * a * np.cos(th) / den
    ys = b * b * np.sin(th) / den
    return make_polygon(list(zip(xs.tolist(), ys.tolist())))


def make_dumbbell(R: float = 1.0, separation: float = 4.0, half_width: float = 0.1) -> Domain:
    """Two disks of radius R centered at (+-separation/2, 0) joined by a corridor."""
    _positive(R=R, separation=separation, half_width=half_width)
    if half_width >= R or separation <= 2 * math.sqrt(R * R - half_width ** 2):
        raise ValueError("corridor must be narrower than the disks and the disks apart")
    c = 0.5 * separation
    jx = c - math.sqrt(R * R - half_width ** 2)
    w = half_width
    return Domain(Point(jx, -w), (_arc(jx, w, c, 0.0), _line(-jx, w),
                                  _arc(-jx, -w, -c, 0.0), _line(jx, -w)))


@dataclass(frozen=True)
class TwoBallParams:
    """Big ball of radius R at the origin, small ball of radius r at (d, 0)."""

    R: float = 1.0
    r: float = 0.5
    d: float = 1.4962
    fillet: float | None = None

    def __post_init__(self):
        _positive(R=self.R, r=self.r, d=self.d)
        if self.r > self.R:
            raise ValueError("need r <= R")
        if not abs(self.R - self.r) < self.d < self.R + self.r:
            raise ValueError("balls must overlap properly: |R - r| < d < R + r")
        if self.fillet is None:
            object.__setattr__(self, "fillet", 0.05 * self.r)
        _positive(fillet=self.fillet)


def two_ball_distance(R: float, r: float, theta_R: float) -> float:
    """Center distance at which the circles meet at angle theta_R seen from the big center."""
    y = R * math.sin(theta_R)
    if y >= r:
        raise ValueError("theta_R too large for the small radius")
    return R * math.cos(theta_R) + math.sqrt(r * r - y * y)


def two_ball_angles(p: TwoBallParams):
    """(theta_R, theta_r) of the unsmoothed union."""
    x = (p.d ** 2 + p.R ** 2 - p.r ** 2) / (2 * p.d)
    y = math.sqrt(max(0.0, p.R ** 2 - x * x))
    return math.atan2(y, x), math.atan2(y, p.d - x)


def two_balls(p: TwoBallParams) -> Domain:
    """Union of the two balls with concave fillet arcs at both junctions."""
    R, r, d, f = p.R, p.r, p.d, p.fillet
    fx = (d * d + (R + f) ** 2 - (r + f) ** 2) / (2 * d)
    fy2 = (R + f) ** 2 - fx * fx
    if fy2 <= 0:
        raise ValueError("fillet does not fit")
    fy = math.sqrt(fy2)
    if fy - f <= 0:
        raise ValueError("fillet does not fit: the two fillets overlap on the axis")
    # tangency points on the big and small circles
    t1x, t1y = fx * R / (R + f), fy * R / (R + f)
    t2x, t2y = d + (fx - d) * r / (r + f), fy * r / (r + f)
    if t2x <= t1x:
        raise ValueError("fillet does not fit: tangency points out of order")
    segs = (
        _arc(t1x, -t1y, 0.0, 0.0),
        _arc(t2x, -t2y, fx, -fy, "cw"),
        _arc(t2x, t2y, d, 0.0),
        _arc(t1x, t1y, fx, fy, "cw"),
    )
    return Domain(Point(t1x, t1y), segs)


def pinocchio_balance(theta: float) -> float:
    """Zero exactly when sin(theta) equals area over perimeter of B_1 u B_sin(theta)((cos theta, 0))."""
    s, c = math.sin(theta), math.cos(theta)
    return 2 * math.pi * s - 2 * theta * s + 0.5 * math.pi * s * s - math.pi + theta - s * c


def solve_pinocchio_angle(tol: Tolerance = DEFAULT_TOL) -> float:
    """Root of the self-Cheeger balance on (0.1, 1.0) by bisection.

    Bisection runs until the bracket stops shrinking, well below eps_root,
    so that the constructed sets satisfy the balance to rounding error.
    """
    lo, hi = 0.1, 1.0
    flo = pinocchio_balance(lo)
    if flo * pinocchio_balance(hi) > 0:
        raise RuntimeError("Pinocchio balance is not bracketed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = pinocchio_balance(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    assert hi - lo <= tol.eps_root
    return root


_THETA0 = None


def pinocchio_angle():
    """Cached default Pinocchio angle."""
    global _THETA0
    if _THETA0 is None:
        _THETA0 = solve_pinocchio_angle()
    return _THETA0


@dataclass(frozen=True)
class PinocchioParams:
    theta: float | None = None
    T: float = 1.0

    def __post_init__(self):
        if self.theta is None:
            object.__setattr__(self, "theta", pinocchio_angle())
        if not 0 < self.theta < 0.5 * math.pi:
            raise ValueError("theta must lie in (0, pi/2)")
        if not (math.isfinite(self.T) and self.T >= 0):
            raise ValueError("nose length T must be non-negative")


def pinocchio(p: PinocchioParams = PinocchioParams()) -> Domain:
    """Unit disk with a nose of half-width sin(theta) and length T ending in a half-disk."""
    s, c, T = math.sin(p.theta), math.cos(p.theta), p.T
    segs = [_arc(c, -s, 0.0, 0.0)]
    if T > 0:
        segs.append(_line(c + T, -s))
    segs.append(_arc(c + T, s, c + T, 0.0))
    if T > 0:
        segs.append(_line(c, s))
    return Domain(Point(c, s), tuple(segs))


# name -> (constructor taking keyword parameters, defaults, description)
FAMILIES = {
    "disk": (lambda R: make_disk(R), {"R": 1.0}, "disk of radius R"),
    "square": (lambda a: make_square(a), {"a": 1.0}, "square [0, a]^2"),
    "stadium": (lambda R, L: make_stadium(R, L), {"R": 1.0, "L": 2.0},
                "rectangle 2R x L capped by half-disks"),
    "ellipse": (lambda a, b, n: make_ellipse(a, b, int(n)), {"a": 2.0, "b": 1.0, "n": 4096},
                "inscribed polygon of the ellipse with semi-axes a, b"),
    "dumbbell": (lambda R, separation, half_width: make_dumbbell(R, separation, half_width),
                 {"R": 1.0, "separation": 4.0, "half_width": 0.1},
                 "two disks joined by a thin corridor"),
    "rounded_rect": (lambda width, height, radius: make_rounded_rect(width, height, radius),
                     {"width": 2.0, "height": 1.0, "radius": 0.25}, "rectangle with filleted corners"),
    "two_balls": (lambda R, r, d, fillet: two_balls(TwoBallParams(R, r, d, fillet)),
                  {"R": 1.0, "r": 0.5, "d": two_ball_distance(1.0, 0.5, 0.05), "fillet": 0.002},
                  "overlapping balls with concave fillets at the junctions"),
    "pinocchio": (lambda theta, T: pinocchio(PinocchioParams(theta, T)),
                  {"theta": None, "T": 1.0},
                  "unit disk with a nose of half-width sin(theta); theta defaults to the balance angle"),
}


def build(name: str, **params) -> Domain:
    """Construct a family member, filling unspecified parameters with defaults."""
    try:
        fn, defaults, _ = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"unknown parameters for {name}: {sorted(unknown)}")
    return fn(**{**defaults, **params})
