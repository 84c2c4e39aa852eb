"""Independent reference values.

Nothing here calls capgeo: each value comes from a closed form, a scalar
root find or a quadrature written directly against the geometry.
"""

import math

from scipy import integrate, optimize, special


def square_inner_cheeger_radius(a=1.0):
    # (a - 2r)^2 = pi r^2 on (0, a/2)
    return optimize.brentq(lambda r: (a - 2 * r) ** 2 - math.pi * r * r, 0.0, a / 2, xtol=1e-15)


def square_cheeger_area(a=1.0):
    """Square with its corners rounded at r*: a^2 - (4 - pi) r*^2."""
    r = square_inner_cheeger_radius(a)
    return a * a - (4 - math.pi) * r * r


def stadium_inner_cheeger_radius(R=1.0, L=2.0):
    # the inner parallel set is the stadium (R - r, L)
    return optimize.brentq(lambda r: math.pi * (R - r) ** 2 + 2 * (R - r) * L - math.pi * r * r,
                           0.0, R, xtol=1e-15)


def ellipse_perimeter(a, b):
    """4 a E(e^2) with the complete elliptic integral of the second kind."""
    return 4 * a * special.ellipe(1 - (b / a) ** 2)


def ellipse_perimeter_quad(a, b):
    val, _ = integrate.quad(lambda t: math.hypot(a * math.sin(t), b * math.cos(t)), 0, 2 * math.pi,
                            epsabs=1e-13, limit=200)
    return val


def ellipse_max_curvature(a, b):
    # curvature a b / (a^2 sin^2 + b^2 cos^2)^(3/2) peaks at the ends of the major axis
    return a / (b * b)


def pinocchio_union(theta):
    """(area, perimeter) of B_1(0) u B_s((cos theta, 0)), s = sin theta.

    The circles meet at (cos theta, +-sin theta), so the chord x = cos theta
    is a diameter of the small disk.
    """
    s, c = math.sin(theta), math.cos(theta)
    area = math.pi - (theta - s * c) + 0.5 * math.pi * s * s
    perim = 2 * (math.pi - theta) + math.pi * s
    return area, perim


def pinocchio_angle():
    """theta with sin theta = area / perimeter of the union above."""
    def f(t):
        area, perim = pinocchio_union(t)
        return math.sin(t) - area / perim
    return optimize.brentq(f, 0.1, 1.0, xtol=1e-15)


def two_ball_union(R, r, d):
    """(area, perimeter) of the union of B_R(0) and B_r((d, 0)) without smoothing."""
    x = (d * d + R * R - r * r) / (2 * d)
    y = math.sqrt(R * R - x * x)
    tR = math.atan2(y, x)
    tr = math.atan2(y, d - x)
    lens = R * R * (tR - math.sin(tR) * math.cos(tR)) + r * r * (tr - math.sin(tr) * math.cos(tr))
    area = math.pi * (R * R + r * r) - lens
    perim = 2 * (math.pi - tR) * R + 2 * (math.pi - tr) * r
    return area, perim


def two_ball_limit_quotient(R, r):
    return 2 * (R + r) / (R * R + r * r)


def steiner_area(area, perim, r):
    """Area of a convex body dilated by a disk of radius r."""
    return area + perim * r + math.pi * r * r


def rounded_square_area(a, r):
    """Square of side a with corners filleted at radius r."""
    return a * a - (4 - math.pi) * r * r


def disk_cap(R, c):
    """(area, arc length, chord length) of {x >= c} inside the disk of radius R."""
    alpha = math.acos(c / R)
    area = R * R * (alpha - math.sin(alpha) * math.cos(alpha))
    return area, 2 * R * alpha, 2 * R * math.sin(alpha)
