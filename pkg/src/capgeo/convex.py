"""Support functions, curvature radius and the curvature criterion for convex domains."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from capgeo import _pieces
from capgeo.geometry import DEFAULT_TOL, Domain, Tolerance, _require_valid
from capgeo.morphology import _junctions

TWO_PI = 2.0 * math.pi


class NotConvexError(ValueError):
    pass


def is_convex(d: Domain, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every vertex turns left (within eps_geom) and every arc is counterclockwise."""
    _require_valid(d, tol)
    P = d.pieces
    if np.any((P[:, 0] == _pieces.ARC) & (P[:, 9] < 0)):
        return False
    return all(turn >= -tol.eps_geom for _, _, turn in _junctions(P))


@dataclass(frozen=True)
class SupportFunction:
    """Samples p(theta_k), theta_k = 2 pi k / n."""

    n: int
    values: tuple[float, ...]

    def __post_init__(self):
        if self.n < 64 or self.n % 2:
            raise ValueError("support function needs an even n >= 64")
        if len(self.values) != self.n:
            raise ValueError("need exactly n samples")

    @property
    def thetas(self):
        return TWO_PI * np.arange(self.n) / self.n

    @property
    def p(self):
        return np.asarray(self.values)

    def derivative(self):
        h = TWO_PI / self.n
        p = self.p
        return (np.roll(p, -1) - np.roll(p, 1)) / (2 * h)

    def boundary_points(self):
        """x = p u + p' u_perp for u = (cos, sin): the point with normal theta."""
        th = self.thetas
        p, dp = self.p, self.derivative()
        return np.stack([p * np.cos(th) - dp * np.sin(th), p * np.sin(th) + dp * np.cos(th)], axis=1)

    def perimeter(self):
        """Cauchy's formula: the perimeter is the integral of p over the circle."""
        return float(np.sum(self.p) * TWO_PI / self.n)


def support_function(d: Domain, n: int = 4096, tol: Tolerance = DEFAULT_TOL) -> SupportFunction:
    """Exact support values: vertex maxima plus closed-form arc contributions."""
    if not is_convex(d, tol):
        raise NotConvexError("support function requested for a non-convex domain")
    th = TWO_PI * np.arange(n) / n
    u = np.stack([np.cos(th), np.sin(th)])
    P = d.pieces
    verts = P[:, 1:3]
    p = np.full(n, -np.inf)
    for lo in range(0, len(verts), 512):
        p = np.maximum(p, np.max(verts[lo:lo + 512] @ u, axis=0))
    for row in P[P[:, 0] == _pieces.ARC]:
        # an arc point with outward normal theta exists iff theta is in its sweep
        off = (th - row[8]) % TWO_PI
        inside = off <= row[9]
        val = row[5] * u[0] + row[6] * u[1] + row[7]
        p = np.where(inside, np.maximum(p, val), p)
    return SupportFunction(n, tuple(p.tolist()))


@dataclass(frozen=True)
class CurvatureProfile:
    rho: tuple[float, ...]
    kappa_bar: float


def curvature_profile(sf: SupportFunction, tol: Tolerance = DEFAULT_TOL) -> CurvatureProfile:
    """rho = p + p'' by periodic second differences, kappa_bar = max 1/rho.

    The second difference is divided by 2(1 - cos h) rather than h^2, which
    makes the operator exact on p(theta) = x cos theta + y sin theta.  A
    polygon then yields rho = 0 (up to rounding) between vertex normals.
    """
    h = TWO_PI / sf.n
    p = sf.p
    rho = p + (np.roll(p, -1) - 2 * p + np.roll(p, 1)) / (2 * (1 - math.cos(h)))
    if np.any(rho <= tol.eps_geom):
        kbar = math.inf
    else:
        kbar = float(np.max(1.0 / rho))
    return CurvatureProfile(tuple(rho.tolist()), kbar)


def kappa_bar(d: Domain, n: int = 4096, tol: Tolerance = DEFAULT_TOL) -> float:
    return curvature_profile(support_function(d, n, tol), tol).kappa_bar


def giusti_criterion(d: Domain, tol: Tolerance = DEFAULT_TOL, n: int = 4096) -> bool:
    """For convex d: the curvature supremum does not exceed P/|d|."""
    if not is_convex(d, tol):
        raise NotConvexError("the curvature criterion only applies to convex domains")
    return kappa_bar(d, n, tol) <= d.length / d.signed_area + tol.eps_root
