"""Pure-Python/numpy implementation of the hot geometric kernels.

Every boundary piece is a row of a float64 array with ten columns::

    kind, x0, y0, x1, y1, cx, cy, radius, phi0, sweep

``kind`` is 0 for a line segment and 1 for a circular arc.  For arcs the
start angle ``phi0`` and the signed ``sweep`` (positive = counterclockwise)
are authoritative; the stored endpoints are derived from them.

The compiled module ``capgeo._kernels`` exposes the same four functions with
identical semantics.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def arc_param(piece, x, y):
    """Normalized position of the angular projection of (x, y) on an arc.

    Values in [0, 1] lie inside the arc; outside values are unwrapped towards
    the nearer end.
    """
    sweep = piece[9]
    a = math.atan2(y - piece[6], x - piece[5]) - piece[8]
    if sweep >= 0.0:
        a = a % TWO_PI
    else:
        a = -((-a) % TWO_PI)
    u = a / sweep
    if u > 1.0:
        period = TWO_PI / abs(sweep)
        if period - u < u - 1.0:
            u -= period
    return u


def _line_nearest(piece, x, y):
    x0, y0, x1, y1 = piece[1], piece[2], piece[3], piece[4]
    dx, dy = x1 - x0, y1 - y0
    ll = dx * dx + dy * dy
    t = 0.0 if ll == 0.0 else ((x - x0) * dx + (y - y0) * dy) / ll
    t = min(1.0, max(0.0, t))
    nx, ny = x0 + t * dx, y0 + t * dy
    return math.hypot(x - nx, y - ny), nx, ny


def _arc_nearest(piece, x, y):
    cx, cy, rad = piece[5], piece[6], piece[7]
    ox, oy = x - cx, y - cy
    rho = math.hypot(ox, oy)
    if rho == 0.0:
        return rad, piece[1], piece[2]
    u = arc_param(piece, x, y)
    if 0.0 <= u <= 1.0:
        nx, ny = cx + rad * ox / rho, cy + rad * oy / rho
        return abs(rho - rad), nx, ny
    d0 = math.hypot(x - piece[1], y - piece[2])
    d1 = math.hypot(x - piece[3], y - piece[4])
    if d0 <= d1:
        return d0, piece[1], piece[2]
    return d1, piece[3], piece[4]


def nearest_point(piece, x, y):
    if piece[0] == 0.0:
        return _line_nearest(piece, x, y)
    return _arc_nearest(piece, x, y)


def _vector_nearest(points, pieces):
    """Distances and nearest points for every (point, piece) pair."""
    px = points[:, 0][:, None]
    py = points[:, 1][:, None]
    kind = pieces[:, 0][None, :]
    x0, y0 = pieces[:, 1][None, :], pieces[:, 2][None, :]
    x1, y1 = pieces[:, 3][None, :], pieces[:, 4][None, :]
    cx, cy = pieces[:, 5][None, :], pieces[:, 6][None, :]
    rad, phi0, sweep = pieces[:, 7][None, :], pieces[:, 8][None, :], pieces[:, 9][None, :]

    # lines
    dx, dy = x1 - x0, y1 - y0
    ll = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(ll > 0.0, ((px - x0) * dx + (py - y0) * dy) / np.where(ll > 0, ll, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    lx, ly = x0 + t * dx, y0 + t * dy

    # arcs
    ox, oy = px - cx, py - cy
    rho = np.hypot(ox, oy)
    a = np.arctan2(oy, ox) - phi0
    a = np.where(sweep >= 0.0, np.mod(a, TWO_PI), -np.mod(-a, TWO_PI))
    safe_sweep = np.where(sweep == 0.0, 1.0, sweep)
    u = a / safe_sweep
    inside = (u >= 0.0) & (u <= 1.0) & (rho > 0.0)
    safe_rho = np.where(rho > 0.0, rho, 1.0)
    ax_in, ay_in = cx + rad * ox / safe_rho, cy + rad * oy / safe_rho
    d0 = np.hypot(px - x0, py - y0)
    d1 = np.hypot(px - x1, py - y1)
    use0 = d0 <= d1
    ax_out = np.where(use0, x0, x1)
    ay_out = np.where(use0, y0, y1)
    ax = np.where(inside, ax_in, ax_out)
    ay = np.where(inside, ay_in, ay_out)
    ax = np.where(rho > 0.0, ax, x0)
    ay = np.where(rho > 0.0, ay, y0)

    is_line = kind == 0.0
    nx = np.where(is_line, lx, ax)
    ny = np.where(is_line, ly, ay)
    dist = np.hypot(px - nx, py - ny)
    return dist, nx, ny


def nearest(points, pieces):
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    pieces = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    return _vector_nearest(points, pieces)


def min_distance(points, pieces, chunk=4096):
    """Minimum distance from each point to the union of pieces, with argmin."""
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    pieces = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    m = len(points)
    if len(pieces) == 0:
        return np.full(m, np.inf), np.full(m, -1, dtype=np.int64)
    dist = np.empty(m)
    idx = np.empty(m, dtype=np.int64)
    step = max(1, chunk * 64 // max(1, len(pieces)))
    for lo in range(0, m, step):
        d, _, _ = _vector_nearest(points[lo:lo + step], pieces)
        k = np.argmin(d, axis=1)
        idx[lo:lo + step] = k
        dist[lo:lo + step] = d[np.arange(len(k)), k]
    return dist, idx


def monotone_pieces(pieces):
    """Split arcs at their topmost/bottommost points.

    Returns rows ``(xa, ya, xb, yb, cx, cy, r, side)`` where ``side`` is 0 for
    a line and +1/-1 for the right/left half of a circle.
    """
    rows = []
    for p in pieces:
        if p[0] == 0.0:
            rows.append((p[1], p[2], p[3], p[4], 0.0, 0.0, 0.0, 0.0))
            continue
        cx, cy, rad, phi0, sweep = p[5], p[6], p[7], p[8], p[9]
        cuts = [0.0]
        # angles pi/2 + k*pi inside the open sweep
        if sweep > 0:
            k = math.floor((phi0 - math.pi / 2) / math.pi) + 1
            a = math.pi / 2 + k * math.pi
            while a < phi0 + sweep:
                if a > phi0:
                    cuts.append(a - phi0)
                a += math.pi
        else:
            k = math.ceil((phi0 - math.pi / 2) / math.pi) - 1
            a = math.pi / 2 + k * math.pi
            while a > phi0 + sweep:
                if a < phi0:
                    cuts.append(a - phi0)
                a -= math.pi
        cuts.append(sweep)
        # outer ends come from the stored endpoints so that consecutive
        # pieces agree exactly on shared vertices
        xy = [(p[1], p[2])]
        for c in cuts[1:-1]:
            xy.append((cx + rad * math.cos(phi0 + c), cy + rad * math.sin(phi0 + c)))
        xy.append((p[3], p[4]))
        for k in range(len(cuts) - 1):
            mid = phi0 + 0.5 * (cuts[k] + cuts[k + 1])
            side = 1.0 if math.cos(mid) >= 0.0 else -1.0
            rows.append((xy[k][0], xy[k][1], xy[k + 1][0], xy[k + 1][1], cx, cy, rad, side))
    return np.array(rows, dtype=np.float64).reshape(-1, 8)


def winding(points, pieces):
    """Winding number of the closed piece set around each point (ray casting)."""
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    mono = monotone_pieces(np.asarray(pieces, dtype=np.float64).reshape(-1, 10))
    w = np.zeros(len(points), dtype=np.int64)
    if len(mono) == 0 or len(points) == 0:
        return w
    px = points[:, 0][:, None]
    py = points[:, 1][:, None]
    xa, ya, xb, yb = (mono[:, i][None, :] for i in range(4))
    cx, cy, rad, side = (mono[:, i][None, :] for i in range(4, 8))
    up = (ya <= py) & (py < yb)
    down = (yb <= py) & (py < ya)
    crosses = up | down
    with np.errstate(invalid="ignore", divide="ignore"):
        dy = yb - ya
        xl = xa + (py - ya) * (xb - xa) / np.where(dy == 0.0, 1.0, dy)
        xc = cx + side * np.sqrt(np.maximum(0.0, rad * rad - (py - cy) ** 2))
    xi = np.where(side == 0.0, xl, xc)
    hit = crosses & (xi > px)
    sign = np.where(up, 1, -1)
    w = np.sum(np.where(hit, sign, 0), axis=1).astype(np.int64)
    return w


def _point_at(piece, t):
    if piece[0] == 0.0:
        return (piece[1] + t * (piece[3] - piece[1]), piece[2] + t * (piece[4] - piece[2]))
    a = piece[8] + t * piece[9]
    return (piece[5] + piece[7] * math.cos(a), piece[6] + piece[7] * math.sin(a))


def _length(piece):
    if piece[0] == 0.0:
        return math.hypot(piece[3] - piece[1], piece[4] - piece[2])
    return piece[7] * abs(piece[9])


def param_of(piece, x, y):
    if piece[0] == 0.0:
        dx, dy = piece[3] - piece[1], piece[4] - piece[2]
        ll = dx * dx + dy * dy
        if ll == 0.0:
            return 0.0
        return ((x - piece[1]) * dx + (y - piece[2]) * dy) / ll
    return arc_param(piece, x, y)


def _accept(piece, x, y, eps):
    """Parameter of (x, y) on the piece if it lies on it within eps, else None."""
    t = param_of(piece, x, y)
    length = _length(piece)
    tol = eps / length if length > 0 else 0.0
    if t < -tol or t > 1.0 + tol:
        return None
    t = min(1.0, max(0.0, t))
    qx, qy = _point_at(piece, t)
    if math.hypot(qx - x, qy - y) > 4.0 * eps:
        return None
    return t


def _curve_points(a, b, eps):
    """Raw intersection points of the carrier curves of two pieces."""
    out = []
    if a[0] == 0.0 and b[0] == 0.0:
        x1, y1 = a[1], a[2]
        dx1, dy1 = a[3] - x1, a[4] - y1
        x2, y2 = b[1], b[2]
        dx2, dy2 = b[3] - x2, b[4] - y2
        den = dx1 * dy2 - dy1 * dx2
        l1 = math.hypot(dx1, dy1)
        l2 = math.hypot(dx2, dy2)
        if abs(den) <= 1e-14 * l1 * l2:
            return out
        t = ((x2 - x1) * dy2 - (y2 - y1) * dx2) / den
        out.append((x1 + t * dx1, y1 + t * dy1))
        return out
    if a[0] == 0.0 or b[0] == 0.0:
        line, arc = (a, b) if a[0] == 0.0 else (b, a)
        x0, y0 = line[1], line[2]
        dx, dy = line[3] - x0, line[4] - y0
        ll = math.hypot(dx, dy)
        if ll == 0.0:
            return out
        ux, uy = dx / ll, dy / ll
        cx, cy, rad = arc[5], arc[6], arc[7]
        # foot of the perpendicular from the center
        s = (cx - x0) * ux + (cy - y0) * uy
        fx, fy = x0 + s * ux, y0 + s * uy
        h = math.hypot(cx - fx, cy - fy)
        if h > rad + eps:
            return out
        if h >= rad - eps:
            if h > 0.0:
                out.append((cx + (fx - cx) * rad / h, cy + (fy - cy) * rad / h))
            return out
        w = math.sqrt(rad * rad - h * h)
        out.append((fx - w * ux, fy - w * uy))
        out.append((fx + w * ux, fy + w * uy))
        return out
    c1x, c1y, r1 = a[5], a[6], a[7]
    c2x, c2y, r2 = b[5], b[6], b[7]
    dx, dy = c2x - c1x, c2y - c1y
    d = math.hypot(dx, dy)
    if d <= eps:
        return out
    if d > r1 + r2 + eps or d < abs(r1 - r2) - eps:
        return out
    ex, ey = dx / d, dy / d
    if d >= r1 + r2 - eps:
        t = r1 + 0.5 * (d - r1 - r2)
        out.append((c1x + t * ex, c1y + t * ey))
        return out
    if d <= abs(r1 - r2) + eps:
        sgn = 1.0 if r1 >= r2 else -1.0
        t = sgn * r1
        out.append((c1x + t * ex, c1y + t * ey))
        return out
    along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h = math.sqrt(max(0.0, r1 * r1 - along * along))
    mx, my = c1x + along * ex, c1y + along * ey
    out.append((mx - h * ey, my + h * ex))
    out.append((mx + h * ey, my - h * ex))
    return out


def intersect(pieces, pairs, eps):
    """Crossings and endpoint touches for candidate pairs of pieces.

    Returns ``(ij, tt)``: for each hit the piece indices and the parameters
    of the hit point on both pieces.
    """
    pieces = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
    ij = []
    tt = []
    for i, j in pairs:
        a = pieces[i]
        b = pieces[j]
        for x, y in _curve_points(a, b, eps):
            ta = _accept(a, x, y, eps)
            if ta is None:
                continue
            tb = _accept(b, x, y, eps)
            if tb is None:
                continue
            ij.append((i, j))
            tt.append((ta, tb))
        for k in (0, 1):
            x, y = a[1 + 2 * k], a[2 + 2 * k]
            d, _, _ = nearest_point(b, x, y)
            if d <= eps:
                tb = min(1.0, max(0.0, param_of(b, x, y)))
                ij.append((i, j))
                tt.append((float(k), tb))
            x, y = b[1 + 2 * k], b[2 + 2 * k]
            d, _, _ = nearest_point(a, x, y)
            if d <= eps:
                ta = min(1.0, max(0.0, param_of(a, x, y)))
                ij.append((i, j))
                tt.append((ta, float(k)))
    return (np.array(ij, dtype=np.int64).reshape(-1, 2),
            np.array(tt, dtype=np.float64).reshape(-1, 2))
