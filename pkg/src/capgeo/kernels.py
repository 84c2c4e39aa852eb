"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``CAPGEO_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the numpy implementation is used.  ``BACKEND`` names the active one.
"""

import math
import os

import numpy as np
from scipy.spatial import cKDTree

from capgeo import _kernels_py

_force_py = os.environ.get("CAPGEO_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_py:
        raise ImportError("pure-Python kernels requested")
    from capgeo import _kernels as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

nearest = _impl.nearest
winding = _impl.winding
intersect = _impl.intersect

# below this many point-piece pairs the brute-force kernel is faster
PRUNE_PAIRS = 1 << 20
_CELL_POINTS = 16


def min_distance(points, pieces):
    """Distance from each point to the union of pieces, with the argmin piece.

    Large inputs are pruned without changing the result: the nearest piece
    endpoint or midpoint bounds the distance from above, so only pieces whose
    bounding box lies within that bound of a cell of query points can win.
    """
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    pieces = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    n, m = len(points), len(pieces)
    if n * m <= PRUNE_PAIRS or m < 64:
        return _impl.min_distance(points, pieces)
    from capgeo import _pieces

    seeds = np.concatenate([pieces[:, 1:3], pieces[:, 3:5], _pieces.midpoints(pieces)])
    ub, _ = cKDTree(seeds).query(points)
    bb = _pieces.bboxes(pieces)
    lo, hi = points.min(axis=0), points.max(axis=0)
    ncell = max(1, int(math.sqrt(n / _CELL_POINTS)))
    size = np.maximum((hi - lo) / ncell, 1e-300)
    cell = np.minimum(((points - lo) / size).astype(np.int64), ncell - 1)
    key = cell[:, 0] * ncell + cell[:, 1]
    order = np.argsort(key, kind="stable")
    bounds = np.flatnonzero(np.diff(key[order])) + 1
    dist = np.empty(n)
    idx = np.empty(n, dtype=np.int64)
    for grp in np.split(order, bounds):
        pts = points[grp]
        reach = float(ub[grp].max()) * (1 + 1e-9) + 1e-300
        x0, y0 = pts.min(axis=0) - reach
        x1, y1 = pts.max(axis=0) + reach
        cand = np.flatnonzero((bb[:, 0] <= x1) & (bb[:, 2] >= x0) & (bb[:, 1] <= y1) & (bb[:, 3] >= y0))
        d, k = _impl.min_distance(pts, pieces[cand])
        dist[grp] = d
        idx[grp] = cand[k]
    return dist, idx


def backends():
    """Map of available backend names to kernel modules."""
    found = {"python": _kernels_py}
    try:
        from capgeo import _kernels
        found["compiled"] = _kernels
    except ImportError:
        pass
    return found


def _boundary_samples(pieces):
    """Samples along every piece (endpoints included) and their worst half-gap."""
    from capgeo import _pieces

    lens = _pieces.lengths(pieces)
    delta = max(float(lens.sum()) / (4 * len(pieces)), 1e-300)
    counts = np.maximum(1, np.ceil(lens / delta).astype(np.int64))
    rows = np.repeat(np.arange(len(pieces)), counts + 1)
    starts = np.repeat(np.cumsum(counts + 1) - (counts + 1), counts + 1)
    t = (np.arange(len(rows)) - starts) / np.repeat(counts, counts + 1)
    pts = _pieces.points_at(pieces[rows], t)
    half_gap = float(np.max(lens / counts)) / 2
    return pts, half_gap


def distance_at_least(points, pieces, r):
    """Boolean mask: the distance from each point to the pieces is >= r.

    Dense boundary samples bracket the distance within half the sample gap
    (arclength dominates chord length); only points whose bracket straddles
    r get the exact computation.
    """
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    pieces = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    n, m = len(points), len(pieces)
    if m == 0:
        return np.ones(n, dtype=bool)
    if n * m <= PRUNE_PAIRS or m < 64:
        return _impl.min_distance(points, pieces)[0] >= r
    samples, half_gap = _boundary_samples(pieces)
    ds, _ = cKDTree(samples, balanced_tree=False, compact_nodes=False).query(points)
    out = ds - half_gap >= r
    unsure = np.flatnonzero(~out & (ds >= r))
    if len(unsure):
        out[unsure] = min_distance(points[unsure], pieces)[0] >= r
    return out
