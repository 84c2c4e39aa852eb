"""Splitting candidate curves at their crossings and tracing closed boundaries.

The inner parallel set and the disk dilation are both computed the same way:
generate every curve that can carry a piece of the result, cut the curves at
all mutual crossings, keep the sub-pieces that sit at exactly the right
distance, and glue the survivors back into oriented closed walks.
"""

import logging
import math
from collections import defaultdict

import numpy as np
from scipy.spatial import cKDTree

from capgeo import _pieces, kernels

log = logging.getLogger(__name__)


def split(pieces, eps):
    """Cut pieces at all crossings and mutual endpoint touches.

    Returns the sub-pieces and the array of crossing points.
    """
    pieces = np.asarray(pieces, dtype=float).reshape(-1, 10)
    n = len(pieces)
    if n == 0:
        return _pieces.empty(), np.zeros((0, 2))
    pairs = _pieces.candidate_pairs(pieces, 2 * eps)
    ij, tt = kernels.intersect(pieces, pairs, eps)
    params = [[0.0, 1.0] for _ in range(n)]
    for (i, j), (ti, tj) in zip(ij.tolist(), tt.tolist()):
        params[i].append(ti)
        params[j].append(tj)
    hits = np.zeros((0, 2))
    if len(ij):
        hits = _pieces.points_at(pieces[ij[:, 0]], tt[:, 0])
    lens = _pieces.lengths(pieces)
    out = []
    for k in range(n):
        ell = lens[k]
        ts = sorted(params[k])
        if ell <= eps:
            continue
        kept = [0.0]
        for t in ts[1:]:
            if (t - kept[-1]) * ell > eps:
                kept.append(t)
        if (1.0 - kept[-1]) * ell <= eps:
            kept[-1] = 1.0
        else:
            kept.append(1.0)
        if len(kept) == 2:
            out.append(pieces[k])
            continue
        for a, b in zip(kept[:-1], kept[1:]):
            out.append(_pieces.sub_piece(pieces[k], a, b))
    return np.array(out).reshape(-1, 10), hits


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def cluster_points(points, eps):
    """Labels grouping points closer than eps (transitively)."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    m = len(points)
    uf = _UnionFind(m)
    if m > 1:
        for a, b in cKDTree(points).query_pairs(eps):
            uf.union(a, b)
    roots = [uf.find(i) for i in range(m)]
    remap = {}
    labels = np.empty(m, dtype=np.int64)
    for i, r in enumerate(roots):
        labels[i] = remap.setdefault(r, len(remap))
    return labels


def _dedupe(pieces, s_node, e_node, eps):
    mids = _pieces.midpoints(pieces)
    seen = defaultdict(list)
    keep = np.ones(len(pieces), dtype=bool)
    for k in range(len(pieces)):
        key = (int(s_node[k]), int(e_node[k]))
        for other in seen[key]:
            if math.hypot(*(mids[k] - mids[other])) <= eps:
                keep[k] = False
                break
        if keep[k]:
            seen[key].append(k)
    return keep


def _prune_dangling(s_node, e_node, alive):
    changed = True
    while changed:
        changed = False
        indeg = defaultdict(int)
        outdeg = defaultdict(int)
        for k in np.nonzero(alive)[0]:
            outdeg[s_node[k]] += 1
            indeg[e_node[k]] += 1
        for k in np.nonzero(alive)[0]:
            if indeg[s_node[k]] == 0 or outdeg[e_node[k]] == 0:
                alive[k] = False
                changed = True
    return alive


def _probe_angles(pieces, at_start, probe):
    """Direction from each piece end towards a point a little along the piece."""
    lens = _pieces.lengths(pieces)
    dt = np.minimum(probe / np.where(lens > 0, lens, 1.0), 1.0 / 3.0)
    if at_start:
        base = pieces[:, 1:3]
        pts = _pieces.points_at(pieces, dt)
    else:
        base = pieces[:, 3:5]
        pts = _pieces.points_at(pieces, 1.0 - dt)
    v = pts - base
    return np.arctan2(v[:, 1], v[:, 0])


def _match_ends(ends):
    """Pair incoming and outgoing ends around one node.

    ``ends`` holds ``(angle, is_in, piece)``.  Sorted counterclockwise with
    outgoing ends first on ties, the region bounded at this node lies between
    an outgoing end and the next incoming end, so each incoming end is matched
    to the nearest unmatched outgoing end clockwise of it.
    """
    ends = sorted(ends, key=lambda e: (e[0], e[1]))
    n = len(ends)
    pairs = {}
    for shift in range(n):
        seq = ends[shift:] + ends[:shift]
        stack = []
        trial = {}
        for ang, is_in, k in seq:
            if not is_in:
                stack.append(k)
            elif stack:
                trial[k] = stack.pop()
        if len(trial) > len(pairs):
            pairs = trial
        n_in = sum(1 for e in ends if e[1])
        if len(pairs) == n_in:
            break
    return pairs


def trace(pieces, eps, probe=None, contract=10.0):
    """Group surviving sub-pieces into connected components of closed walks.

    Returns a list of components; each is a list of faces, each face an
    ordered piece array forming a closed oriented loop.  Faces of one
    component share at least one node.  Pieces no longer than
    ``contract * eps`` are collapsed into their endpoints' common node.
    """
    pieces = np.asarray(pieces, dtype=float).reshape(-1, 10)
    if len(pieces) == 0:
        return []
    lens = _pieces.lengths(pieces)
    ends = np.concatenate([pieces[:, 1:3], pieces[:, 3:5]])
    labels = cluster_points(ends, eps)
    n = len(pieces)
    # contract pieces too short to carry a direction into a single node
    short = lens <= contract * eps
    if np.any(short):
        uf = _UnionFind(int(labels.max()) + 1)
        for k in np.nonzero(short)[0]:
            uf.union(int(labels[k]), int(labels[n + k]))
        roots = np.array([uf.find(int(x)) for x in labels])
        _, labels = np.unique(roots, return_inverse=True)
    s_node, e_node = labels[:n], labels[n:]
    # snap endpoints to node centroids so that every walk closes exactly
    n_nodes = int(labels.max()) + 1
    cnt = np.bincount(labels, minlength=n_nodes)
    node_xy = np.stack([np.bincount(labels, ends[:, 0], n_nodes),
                        np.bincount(labels, ends[:, 1], n_nodes)], axis=1) / cnt[:, None]
    pieces = pieces.copy()
    pieces[:, 1:3] = node_xy[s_node]
    pieces[:, 3:5] = node_xy[e_node]
    alive = ~short
    alive &= _dedupe(pieces, s_node, e_node, eps)
    alive = _prune_dangling(s_node, e_node, alive)
    idx = np.nonzero(alive)[0]
    if len(idx) == 0:
        return []
    if probe is None:
        span = float(np.ptp(ends[:, 0]) + np.ptp(ends[:, 1]))
        probe = max(1e-3 * span, 100 * eps)
    a_out = _probe_angles(pieces, True, probe)
    a_in = _probe_angles(pieces, False, probe)
    at_node = defaultdict(list)
    for k in idx:
        at_node[s_node[k]].append((a_out[k], False, int(k)))
        at_node[e_node[k]].append((a_in[k], True, int(k)))
    nxt = {}
    for node, node_ends in at_node.items():
        m = _match_ends(node_ends)
        nxt.update(m)
    unmatched = [int(k) for k in idx if int(k) not in nxt]
    if unmatched:
        log.debug("trace: %d pieces left unmatched", len(unmatched))
    # faces
    used = set()
    faces = []
    for k0 in idx:
        k0 = int(k0)
        if k0 in used or k0 not in nxt:
            continue
        face = []
        k = k0
        while k not in used:
            used.add(k)
            face.append(k)
            if k not in nxt:
                break
            k = nxt[k]
        if k == k0:
            faces.append(face)
        else:
            log.debug("trace: open chain of %d pieces discarded", len(face))
    # components by node connectivity
    uf = _UnionFind(int(labels.max()) + 1)
    for face in faces:
        for k in face:
            uf.union(int(s_node[k]), int(e_node[k]))
    groups = defaultdict(list)
    for face in faces:
        groups[uf.find(int(s_node[face[0]]))].append(face)
    comps = []
    for root in sorted(groups):
        comps.append([pieces[face] for face in groups[root]])
    return comps


def splice(faces, eps):
    """Concatenate faces sharing nodes into one closed walk."""
    faces = [np.asarray(f) for f in faces]
    if len(faces) == 1:
        return faces[0]
    walk = faces[0]
    rest = faces[1:]
    while rest:
        starts = walk[:, 1:3]
        placed = False
        for fi, face in enumerate(rest):
            fstarts = face[:, 1:3]
            d = np.hypot(starts[:, None, 0] - fstarts[None, :, 0],
                         starts[:, None, 1] - fstarts[None, :, 1])
            hit = np.argwhere(d <= eps)
            if len(hit) == 0:
                continue
            wi, fj = hit[0]
            rolled = np.concatenate([face[fj:], face[:fj]])
            walk = np.concatenate([walk[:wi], rolled, walk[wi:]])
            rest.pop(fi)
            placed = True
            break
        if not placed:
            # connected only through a node that is not a face start; fall back
            # to appending (area and length stay exact)
            walk = np.concatenate([walk, rest.pop(0)])
    return walk
