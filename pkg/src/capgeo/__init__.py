"""Geometric existence criteria for capillary surfaces in tubes with planar cross-section."""

from capgeo.cheeger import (CheegerResult, NeckError, cheeger_constant, classify,
                            inner_cheeger_radius, maximal_cheeger_set)
from capgeo.convex import (NotConvexError, SupportFunction, curvature_profile, giusti_criterion,
                           is_convex, kappa_bar, support_function)
from capgeo.gallery import (make_disk, make_dumbbell, make_ellipse, make_polygon, make_rounded_rect,
                            make_square, make_stadium, pinocchio, solve_pinocchio_angle, two_balls)
from capgeo.geometry import (DEFAULT_TOL, Diagnostics, Domain, InvalidDomainError, Point, Segment,
                             Tolerance, area, inside, perimeter, quotient, signed_distance, validate)
from capgeo.kernels import BACKEND
from capgeo.morphology import Region, dilate, erode, has_no_neck, inradius, opening
from capgeo.reach import ContactSet, contacts_at, reach_report, rolling_ball, strict_rolling_ball
from capgeo.verdict import SubsetWitness, Verdict, decide, necessary_quotient, witness_search

__version__ = "0.1.0"
