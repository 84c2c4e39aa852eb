"""Existence decision for the capillary problem in a tube with cross-section d."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from capgeo import _pieces, kernels
from capgeo.cheeger import inner_cheeger_radius
from capgeo.convex import giusti_criterion, is_convex
from capgeo.geometry import (DEFAULT_TOL, Domain, InvalidDomainError, Tolerance, _require_valid,
                             sample_boundary, validate)
from capgeo.morphology import Region, dilate, erode, has_no_neck, inradius, opening
from capgeo.reach import strict_rolling_ball

log = logging.getLogger(__name__)

STATUSES = ("exists", "nonexistence", "unresolved")
EXIT_CODES = {"exists": 0, "nonexistence": 10, "unresolved": 20}
N_LEVELS = 32


@dataclass(frozen=True)
class SubsetWitness:
    """A proper subset E whose quotient does not beat the domain's."""

    subset: Domain
    quotient_E: float
    quotient_Omega: float
    rho: float | None = None

    def to_dict(self):
        return {"quotient_E": self.quotient_E, "quotient_Omega": self.quotient_Omega,
                "rho": self.rho, "area_E": self.subset.signed_area,
                "subset": self.subset.to_json()}


@dataclass
class Verdict:
    gamma: float
    status: str
    criterion_path: list[str]
    r_phys: float
    witness: SubsetWitness | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def to_dict(self):
        return {"status": self.status, "gamma": self.gamma,
                "criterion_path": list(self.criterion_path), "r_phys": self.r_phys,
                "witness": None if self.witness is None else self.witness.to_dict(),
                "notes": list(self.notes)}


def _interval_overlap(lo1, hi1, lo2, hi2, period=None):
    if period is None:
        return max(0.0, min(hi1, hi2) - max(lo1, lo2))
    shift = math.floor((lo1 - lo2) / period) * period
    return sum(max(0.0, min(hi1, hi2 + k) - max(lo1, lo2 + k))
               for k in (shift - period, shift, shift + period, shift + 2 * period))


def _ccw_interval(row):
    lo = row[8] if row[9] >= 0 else row[8] + row[9]
    return lo, lo + abs(row[9])


def _shared_length(e: Domain, omega: Domain, tol: Tolerance) -> float:
    """Length of the part of the boundary of e lying on the boundary of omega.

    Only coincident pieces can share positive length: collinear lines share
    their projected overlap, concentric arcs of equal radius their angular
    overlap.  Touching at isolated points, including tangential departures,
    contributes nothing.
    """
    eps = tol.eps_geom
    Q = omega.pieces
    qb = _pieces.bboxes(Q)
    total = 0.0
    for row, (x0, y0, x1, y1) in zip(e.pieces, _pieces.bboxes(e.pieces)):
        near = np.flatnonzero((qb[:, 0] <= x1 + eps) & (qb[:, 2] >= x0 - eps)
                              & (qb[:, 1] <= y1 + eps) & (qb[:, 3] >= y0 - eps)
                              & (Q[:, 0] == row[0]))
        for q in Q[near]:
            if row[0] == _pieces.LINE:
                ux, uy = q[3] - q[1], q[4] - q[2]
                ll = math.hypot(ux, uy)
                ux, uy = ux / ll, uy / ll
                sa = (row[1] - q[1]) * ux + (row[2] - q[2]) * uy
                sb = (row[3] - q[1]) * ux + (row[4] - q[2]) * uy
                da = abs((row[2] - q[2]) * ux - (row[1] - q[1]) * uy)
                db = abs((row[4] - q[2]) * ux - (row[3] - q[1]) * uy)
                if da <= eps and db <= eps:
                    total += _interval_overlap(min(sa, sb), max(sa, sb), 0.0, ll)
            elif math.hypot(row[5] - q[5], row[6] - q[6]) <= eps and abs(row[7] - q[7]) <= eps:
                a0, a1 = _ccw_interval(row)
                b0, b1 = _ccw_interval(q)
                total += row[7] * _interval_overlap(a0, a1, b0, b1, 2 * math.pi)
    return float(min(total, e.length))


def _contained(e: Domain, omega: Domain, tol: Tolerance) -> bool:
    pts, _ = sample_boundary(e.pieces, tol.n_samples)
    pts = np.concatenate([pts, e.pieces[:, 1:3]])
    dist, _ = kernels.min_distance(pts, omega.pieces)
    inside = kernels.winding(pts, omega.pieces) != 0
    return bool(np.all(inside | (dist <= tol.eps_geom)))


def necessary_quotient(omega: Domain, e: Domain, gamma: float = 0.0,
                       tol: Tolerance = DEFAULT_TOL) -> float:
    """(P(E; omega) + cos(gamma) P(E; boundary of omega)) / |E|."""
    _require_valid(omega, tol)
    if not (0.0 <= gamma <= 0.5 * math.pi):
        raise ValueError("gamma must lie in [0, pi/2]")
    if e.is_point or e.signed_area < tol.eps_area:
        raise ValueError("subset has (numerically) zero area")
    if not _contained(e, omega, tol):
        raise ValueError("subset is not contained in the domain")
    shared = _shared_length(e, omega, tol)
    interior = max(0.0, e.length - shared)
    return (interior + math.cos(gamma) * shared) / e.signed_area


def _threads():
    try:
        return max(1, int(os.environ.get("CAPGEO_THREADS", "1")))
    except ValueError:
        return 1


def _level_witnesses(omega, rho, q, tol):
    """Candidate subsets C + B_rho for the components C of the inner parallel set."""
    out = []
    reg = erode(omega, rho, tol)
    for comp in reg.components:
        dil = dilate(Region((comp,)), rho, tol)
        if len(dil.components) != 1 or dil.holes:
            continue
        e = dil.components[0]
        if omega.signed_area - e.signed_area <= tol.eps_area:
            continue  # not a proper subset
        try:
            qe = necessary_quotient(omega, e, 0.0, tol)
        except ValueError:
            continue
        if qe <= q + tol.eps_root:
            out.append(SubsetWitness(e, qe, q, rho))
    return out


def witness_search(omega: Domain, tol: Tolerance = DEFAULT_TOL, levels: int = N_LEVELS):
    """Best proper subset violating the strict quotient inequality, or None."""
    q = omega.length / omega.signed_area
    rin = inradius(omega, tol)
    if rin <= 0:
        return None
    rhos = rin * np.geomspace(1e-3, 1 - 1e-3, levels)
    nthreads = _threads()
    if nthreads > 1:
        with ThreadPoolExecutor(nthreads) as ex:
            found = list(ex.map(lambda r: _level_witnesses(omega, float(r), q, tol), rhos))
    else:
        found = [_level_witnesses(omega, float(r), q, tol) for r in rhos]
    cands = [w for ws in found for w in ws]
    if not cands:
        return None
    return min(cands, key=lambda w: (w.quotient_E, w.rho))


def _cheeger_gap(omega, q, tol):
    r = inner_cheeger_radius(omega, tol)
    h = 1.0 / r
    if not h < q - tol.eps_root:
        return None, h
    for comp in opening(omega, r, tol).components:
        if comp.is_point or omega.signed_area - comp.signed_area <= tol.eps_area:
            continue
        try:
            qe = necessary_quotient(omega, comp, 0.0, tol)
        except ValueError:
            continue
        if qe < q - tol.eps_root:
            return SubsetWitness(comp, qe, q, r), h
    return None, h


def _decide_zero(omega, tol, skip_convex=False):
    path, notes = [], []
    q = omega.length / omega.signed_area
    r_phys = 1.0 / q
    if not skip_convex and is_convex(omega, tol):
        ok = giusti_criterion(omega, tol)
        return Verdict(0.0, "exists" if ok else "nonexistence", ["convex_iff"], r_phys, None, notes)
    if strict_rolling_ball(omega, r_phys, tol):
        return Verdict(0.0, "exists", ["strict_rolling_ball"], r_phys, None, notes)
    path.append("strict_rolling_ball")
    if has_no_neck(omega, r_phys, tol):
        return Verdict(0.0, "nonexistence", path + ["no_neck_iff"], r_phys, None,
                       notes + ["strict rolling ball fails at r_phys and there is no neck"])
    path.append("no_neck_iff")
    w = witness_search(omega, tol)
    if w is not None:
        return Verdict(0.0, "nonexistence", path + ["witness_violation"], r_phys, w, notes)
    path.append("witness_violation")
    w, h = _cheeger_gap(omega, q, tol)
    if w is not None:
        return Verdict(0.0, "nonexistence", path + ["cheeger_gap"], r_phys, w,
                       notes + [f"Cheeger candidate h = {h:.12g} below P/|omega| = {q:.12g}"])
    path.append("cheeger_gap")
    notes.append("no criterion applies and no violating subset was found")
    return Verdict(0.0, "unresolved", path, r_phys, None, notes)


def decide(omega: Domain, gamma: float = 0.0, tol: Tolerance = DEFAULT_TOL,
           skip_convex: bool = False) -> Verdict:
    """Run the criteria in order of cost and strength.

    ``criterion_path`` lists the criteria consulted; the last entry is the
    one that settled the status (for unresolved, all of them failed).
    ``skip_convex`` bypasses the convex iff, forcing the rolling-ball route.
    """
    diag = validate(omega, tol)
    if not diag.ok:
        raise InvalidDomainError(f"invalid domain: {diag.violation}: {diag.message}")
    if not (0.0 <= gamma <= 0.5 * math.pi):
        raise ValueError("gamma must lie in [0, pi/2]")
    r_phys = omega.signed_area / omega.length
    if gamma == 0.5 * math.pi:
        return Verdict(gamma, "exists", ["gamma_trivial"], r_phys, None,
                       ["cos(gamma) = 0: the constant function solves the problem"])
    base = _decide_zero(omega, tol, skip_convex)
    if gamma == 0.0:
        return base
    if base.status == "exists":
        return Verdict(gamma, "exists", base.criterion_path + ["gamma_reduction"], r_phys, None,
                       base.notes + ["existence at gamma = 0 implies existence for larger gamma"])
    notes = base.notes + [f"gamma = 0 gives {base.status}; this does not transfer to gamma > 0"]
    if base.witness is not None:
        qg = necessary_quotient(omega, base.witness.subset, gamma, tol)
        qo = math.cos(gamma) * omega.length / omega.signed_area
        notes.append(f"witness quotient at gamma: {qg:.12g} vs domain {qo:.12g}")
    # the witness is not a certificate at this gamma, so it is only described
    return Verdict(gamma, "unresolved", base.criterion_path, r_phys, None, notes)
