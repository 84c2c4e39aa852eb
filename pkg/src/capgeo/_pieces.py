"""Vectorized helpers over piece arrays (see ``_kernels_py`` for the layout)."""

import math

import numpy as np

TWO_PI = 2.0 * math.pi
LINE = 0.0
ARC = 1.0


def empty():
    return np.zeros((0, 10))


def line(x0, y0, x1, y1):
    return np.array([LINE, x0, y0, x1, y1, 0.0, 0.0, 0.0, 0.0, 0.0])


def arc(cx, cy, radius, phi0, sweep):
    phi1 = phi0 + sweep
    return np.array([ARC,
                     cx + radius * math.cos(phi0), cy + radius * math.sin(phi0),
                     cx + radius * math.cos(phi1), cy + radius * math.sin(phi1),
                     cx, cy, radius, phi0, sweep])


def lengths(p):
    is_line = p[:, 0] == LINE
    return np.where(is_line, np.hypot(p[:, 3] - p[:, 1], p[:, 4] - p[:, 2]),
                    p[:, 7] * np.abs(p[:, 9]))


def area(p):
    """Signed area enclosed by a closed set of oriented pieces.

    Chord shoelace term plus the circular-segment term for arcs.
    """
    if len(p) == 0:
        return 0.0
    chord = 0.5 * (p[:, 1] * p[:, 4] - p[:, 3] * p[:, 2])
    sw = p[:, 9]
    seg = np.where(p[:, 0] == ARC, 0.5 * p[:, 7] ** 2 * (sw - np.sin(sw)), 0.0)
    return float(np.sum(chord) + np.sum(seg))


def points_at(p, t):
    """Points at parameter(s) t on each piece (t broadcast against rows)."""
    t = np.asarray(t, dtype=float)
    lx = p[:, 1] + t * (p[:, 3] - p[:, 1])
    ly = p[:, 2] + t * (p[:, 4] - p[:, 2])
    a = p[:, 8] + t * p[:, 9]
    ax = p[:, 5] + p[:, 7] * np.cos(a)
    ay = p[:, 6] + p[:, 7] * np.sin(a)
    is_line = p[:, 0] == LINE
    return np.stack([np.where(is_line, lx, ax), np.where(is_line, ly, ay)], axis=-1)


def midpoints(p):
    return points_at(p, 0.5)


def tangents(p, t):
    """Unit tangent (direction of travel) of each piece at parameter t."""
    t = np.asarray(t, dtype=float)
    dx = p[:, 3] - p[:, 1]
    dy = p[:, 4] - p[:, 2]
    ll = np.hypot(dx, dy)
    ll = np.where(ll > 0, ll, 1.0)
    a = p[:, 8] + t * p[:, 9]
    s = np.sign(p[:, 9])
    s = np.where(s == 0, 1.0, s)
    tx = np.where(p[:, 0] == LINE, dx / ll, -np.sin(a) * s)
    ty = np.where(p[:, 0] == LINE, dy / ll, np.cos(a) * s)
    return np.stack([tx, ty], axis=-1)


def curvatures(p):
    """Signed curvature (positive = turning left)."""
    with np.errstate(divide="ignore"):
        k = np.where(p[:, 0] == ARC, np.sign(p[:, 9]) / np.where(p[:, 7] > 0, p[:, 7], np.inf), 0.0)
    return k


def sub_piece(row, ta, tb):
    if row[0] == LINE:
        x0 = row[1] + ta * (row[3] - row[1])
        y0 = row[2] + ta * (row[4] - row[2])
        x1 = row[1] + tb * (row[3] - row[1])
        y1 = row[2] + tb * (row[4] - row[2])
        return line(x0, y0, x1, y1)
    return arc(row[5], row[6], row[7], row[8] + ta * row[9], (tb - ta) * row[9])


def reverse(p):
    out = p.copy()
    out[:, [1, 2, 3, 4]] = p[:, [3, 4, 1, 2]]
    is_arc = p[:, 0] == ARC
    out[is_arc, 8] = p[is_arc, 8] + p[is_arc, 9]
    out[is_arc, 9] = -p[is_arc, 9]
    return out


def bboxes(p):
    """Axis-aligned bounding boxes (xmin, ymin, xmax, ymax) per piece."""
    xmin = np.minimum(p[:, 1], p[:, 3])
    xmax = np.maximum(p[:, 1], p[:, 3])
    ymin = np.minimum(p[:, 2], p[:, 4])
    ymax = np.maximum(p[:, 2], p[:, 4])
    arcs = np.nonzero(p[:, 0] == ARC)[0]
    for k in arcs:
        cx, cy, rad, phi0, sweep = p[k, 5:10]
        lo, hi = (phi0, phi0 + sweep) if sweep >= 0 else (phi0 + sweep, phi0)
        # extreme directions: 0 -> +x, pi/2 -> +y, pi -> -x, 3pi/2 -> -y
        for q, (axis, val) in enumerate(((0, cx + rad), (1, cy + rad), (0, cx - rad), (1, cy - rad))):
            ang = q * math.pi / 2
            m = math.ceil((lo - ang) / TWO_PI)
            if ang + m * TWO_PI <= hi:
                if q == 0:
                    xmax[k] = val
                elif q == 1:
                    ymax[k] = val
                elif q == 2:
                    xmin[k] = val
                else:
                    ymin[k] = val
    return np.stack([xmin, ymin, xmax, ymax], axis=1)


def candidate_pairs(p, pad, q=None):
    """Index pairs with overlapping padded bounding boxes.

    Without ``q`` all unordered pairs within ``p`` (i < j); with ``q`` the
    pairs (i in p, j in q).
    """
    bp = bboxes(p)
    bq = bp if q is None else bboxes(q)
    out = []
    n = len(bp)
    step = max(1, 2_000_000 // max(1, len(bq)))
    for lo in range(0, n, step):
        a = bp[lo:lo + step]
        ov = ((a[:, None, 0] <= bq[None, :, 2] + pad) & (bq[None, :, 0] <= a[:, None, 2] + pad)
              & (a[:, None, 1] <= bq[None, :, 3] + pad) & (bq[None, :, 1] <= a[:, None, 3] + pad))
        ii, jj = np.nonzero(ov)
        ii = ii + lo
        if q is None:
            keep = ii < jj
            ii, jj = ii[keep], jj[keep]
        out.append(np.stack([ii, jj], axis=1))
    if not out:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(out).astype(np.int64)


def offset(p, dist, eps=0.0):
    """Offset every piece by ``dist`` along its left normal.

    Arcs whose offset radius falls to ``eps`` or below are dropped and their
    centers reported in the second output; arcs whose offset radius
    becomes negative continue on the opposite side of the center.
    """
    rows = []
    collapsed = []
    for row in p:
        if row[0] == LINE:
            dx, dy = row[3] - row[1], row[4] - row[2]
            ll = math.hypot(dx, dy)
            nx, ny = -dy / ll, dx / ll
            rows.append(line(row[1] + dist * nx, row[2] + dist * ny,
                             row[3] + dist * nx, row[4] + dist * ny))
            continue
        # left normal of a ccw arc points to the center
        s = 1.0 if row[9] > 0 else -1.0
        new_r = row[7] - s * dist
        if abs(new_r) <= eps:
            collapsed.append((row[5], row[6]))
            continue
        if new_r > 0:
            rows.append(arc(row[5], row[6], new_r, row[8], row[9]))
        else:
            rows.append(arc(row[5], row[6], -new_r, row[8] + math.pi, row[9]))
    arr = np.array(rows).reshape(-1, 10)
    return arr, collapsed


def turn_angle(t_in, t_out):
    """Signed angle from direction t_in to t_out in (-pi, pi]."""
    cross = t_in[0] * t_out[1] - t_in[1] * t_out[0]
    dot = t_in[0] * t_out[0] + t_in[1] * t_out[1]
    return math.atan2(cross, dot)
