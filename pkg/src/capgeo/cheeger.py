"""Inner Cheeger radius, Cheeger constant, maximal Cheeger set and classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from capgeo.geometry import DEFAULT_TOL, Domain, Tolerance, _require_valid
from capgeo.morphology import Region, erode, has_no_neck, opening
from capgeo.reach import strict_rolling_ball


class NeckError(ValueError):
    """The inner parallel set at the Cheeger radius is not connected."""


def _g(d, r, tol):
    return erode(d, r, tol).area - math.pi * r * r


def inner_cheeger_radius(d: Domain, tol: Tolerance = DEFAULT_TOL) -> float:
    """Root of area(erode(d, r)) = pi r^2.

    g(r) = area(erode(d, r)) - pi r^2 is continuous and strictly decreasing.
    The root is bracketed by |d|/P(d) (d competes with its own subsets, so
    h <= P/|d|) and sqrt(|d|/pi) (the disk term alone equals |d| there) and
    refined with Brent's bracketing method to eps_root / 2.
    """
    _require_valid(d, tol)
    lo = d.signed_area / d.length
    hi = math.sqrt(d.signed_area / math.pi)
    g_lo = _g(d, lo, tol)
    if g_lo <= 0:
        if g_lo > -tol.eps_area:
            return lo  # self-Cheeger: the root sits on the lower end
        raise RuntimeError("inner Cheeger equation is not bracketed")
    if not _g(d, hi, tol) < 0:
        raise RuntimeError("inner Cheeger equation is not bracketed")
    return float(brentq(lambda r: _g(d, r, tol), lo, hi, xtol=0.5 * tol.eps_root, maxiter=200))


def cheeger_constant(d: Domain, tol: Tolerance = DEFAULT_TOL):
    """(h, valid): h = 1/r*, valid iff the inner parallel set at r* is connected.

    When ``valid`` is False, h is only a candidate.
    """
    r = inner_cheeger_radius(d, tol)
    return 1.0 / r, has_no_neck(d, r, tol)


def maximal_cheeger_set(d: Domain, tol: Tolerance = DEFAULT_TOL, r_star: float | None = None) -> Region:
    """Opening of d at the inner Cheeger radius; refuses domains with a neck there."""
    r = inner_cheeger_radius(d, tol) if r_star is None else r_star
    if not has_no_neck(d, r, tol):
        raise NeckError(f"inner parallel set at r* = {r:.12g} is disconnected; "
                        "the opening is not a Cheeger set")
    return opening(d, r, tol)


@dataclass
class CheegerResult:
    r_star: float
    h: float
    cheeger_set: Region
    no_neck_valid: bool
    self_cheeger: bool
    minimal: bool
    r_phys: float
    notes: list[str] = field(default_factory=list)

    @property
    def cheeger_area(self):
        return self.cheeger_set.area

    def to_dict(self):
        return {"r_star": self.r_star, "h": self.h, "r_phys": self.r_phys,
                "no_neck_valid": self.no_neck_valid, "self_cheeger": self.self_cheeger,
                "minimal": self.minimal, "cheeger_set_area": self.cheeger_area,
                "cheeger_set_components": len(self.cheeger_set),
                "notes": list(self.notes)}


def classify(d: Domain, tol: Tolerance = DEFAULT_TOL) -> CheegerResult:
    """Cheeger data of d and whether d is a (minimal) Cheeger set in itself."""
    _require_valid(d, tol)
    r = inner_cheeger_radius(d, tol)
    r_phys = d.signed_area / d.length
    valid = has_no_neck(d, r, tol)
    cset = opening(d, r, tol)
    notes = []
    if not valid:
        notes.append("neck at r*: h and the opening are candidates only")
    # the opening is a subset of d, so the symmetric difference is the area gap
    self_cheeger = (d.signed_area - cset.area < tol.eps_area) and abs(r - r_phys) < tol.eps_root
    minimal = self_cheeger and strict_rolling_ball(d, r_phys, tol)
    if self_cheeger and not minimal:
        notes.append("Cheeger in itself but the strict rolling ball fails at r_phys")
    return CheegerResult(r, 1.0 / r, cset, valid, self_cheeger, minimal, r_phys, notes)
