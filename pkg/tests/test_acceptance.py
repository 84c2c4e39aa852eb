"""Acceptance criteria, one test per criterion.

Each test records a pass/fail line in ``conftest.ACCEPTANCE``; the lines are
printed in the terminal summary.  Reference values come from the oracles in
``oracles.py`` (closed forms computed independently of capgeo).
"""

import functools
import io
import math
import os
import subprocess
import sys
import time

import pytest

import conftest
import oracles
import test_properties as props
from capgeo import gallery
from capgeo.cheeger import cheeger_constant, classify, inner_cheeger_radius, maximal_cheeger_set
from capgeo.cli import run
from capgeo.convex import giusti_criterion, kappa_bar
from capgeo.verdict import decide

pytestmark = pytest.mark.acceptance


def criterion(key):
    """Record the outcome of the checks a test returns; any exception is a FAIL."""
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                checks = fn(*args, **kwargs)
            except Exception as exc:
                conftest.ACCEPTANCE[key] = (False, f"raised {type(exc).__name__}: {exc}")
                raise
            failed = [label for label, ok in checks if not ok]
            detail = "; ".join(label for label, _ in checks)
            conftest.ACCEPTANCE[key] = (not failed, detail if not failed else "failed: " + "; ".join(failed))
            assert not failed, failed
        return inner
    return wrap


@criterion(1)
def test_disk():
    d = gallery.make_disk(1.0)
    t0 = time.perf_counter()
    h, valid = cheeger_constant(d)
    v = decide(d, 0.0)
    dt = time.perf_counter() - t0
    return [(f"h = {h:.10f} vs 2 (1e-6)", abs(h - 2.0) <= 1e-6),
            ("no-neck at r*", valid),
            (f"decide = {v.status} via {v.criterion_path[-1]}",
             v.status == "exists" and v.criterion_path[-1] == "convex_iff"),
            (f"runtime {dt:.2f} s < 1 s", dt < 1.0)]


@criterion(2)
def test_square():
    d = gallery.make_square(1.0)
    t0 = time.perf_counter()
    r = inner_cheeger_radius(d)
    cset = maximal_cheeger_set(d, r_star=r)
    v = decide(d, 0.0)
    kb = kappa_bar(d)
    dt = time.perf_counter() - t0
    r_ref = 1 / (2 + math.sqrt(math.pi))
    # the stated decimal 0.940258 disagrees with its own closed form; the closed form is checked
    a_ref = 1 - (4 - math.pi) / (2 + math.sqrt(math.pi)) ** 2
    return [(f"r* = {r:.10f} vs {r_ref:.10f} (1e-6)", abs(r - r_ref) <= 1e-6),
            (f"h = {1 / r:.8f} vs {1 / r_ref:.8f} (1e-5)", abs(1 / r - 1 / r_ref) <= 1e-5),
            (f"r* oracle {oracles.square_inner_cheeger_radius():.10f}",
             abs(r - oracles.square_inner_cheeger_radius()) <= 1e-6),
            (f"Cheeger area {cset.area:.8f} vs {a_ref:.8f} (1e-4)", abs(cset.area - a_ref) <= 1e-4),
            (f"kappa_bar = {kb}", math.isinf(kb)),
            (f"decide = {v.status} via {v.criterion_path[-1]}", v.status == "nonexistence"),
            (f"runtime {dt:.2f} s < 5 s", dt < 5.0)]


@criterion(3)
def test_stadium():
    d = gallery.make_stadium(1.0, 2.0)
    r = inner_cheeger_radius(d)
    r_ref = (math.pi + 4) / (2 * math.pi + 4)
    r_phys = d.signed_area / d.length
    v0 = decide(d, 0.0)
    v3 = decide(d, 0.3)
    return [(f"r* = {r:.12f} vs {r_ref:.12f} (1e-6)", abs(r - r_ref) <= 1e-6),
            (f"oracle r* {oracles.stadium_inner_cheeger_radius():.12f}",
             abs(r - oracles.stadium_inner_cheeger_radius()) <= 1e-6),
            (f"r* - |d|/P = {r - r_phys:.2e} (1e-9)", abs(r - r_phys) <= 1e-9),
            (f"decide(0) = {v0.status}", v0.status == "exists"),
            (f"decide(0.3) = {v3.status} via {v3.criterion_path[-1]}",
             v3.status == "exists" and v3.criterion_path[-1] == "gamma_reduction")]


@criterion(4)
def test_pinocchio():
    theta = gallery.solve_pinocchio_angle()
    qs = [(lambda p: p.length / p.signed_area)(gallery.pinocchio(gallery.PinocchioParams(theta, T)))
          for T in (0.0, 0.25, 0.5, 1.0)]
    p1 = gallery.pinocchio(gallery.PinocchioParams(theta, 1.0))
    c = classify(p1)
    v = decide(p1, 0.0)
    return [(f"theta0 = {theta:.6f} vs 0.531 (1e-3)", abs(theta - 0.531) <= 1e-3),
            (f"theta0 oracle {oracles.pinocchio_angle():.10f}", abs(theta - oracles.pinocchio_angle()) <= 1e-9),
            (f"sin = {math.sin(theta):.6f} vs 0.5063", abs(math.sin(theta) - 0.5063) <= 1e-3),
            (f"cos = {math.cos(theta):.6f} vs 0.8623", abs(math.cos(theta) - 0.8623) <= 1e-3),
            (f"quotient spread over T = {max(qs) - min(qs):.2e} (1e-6)", max(qs) - min(qs) <= 1e-6),
            (f"self_cheeger={c.self_cheeger} minimal={c.minimal}", c.self_cheeger and not c.minimal),
            (f"decide = {v.status} via {v.criterion_path[-1]}",
             v.status == "nonexistence" and v.criterion_path[-1] == "no_neck_iff")]


@criterion(5)
def test_two_balls():
    d = gallery.build("two_balls")
    defaults = gallery.FAMILIES["two_balls"][1]
    theta_R, _ = gallery.two_ball_angles(gallery.TwoBallParams(defaults["R"], defaults["r"], defaults["d"]))
    q = d.length / d.signed_area
    v = decide(d, 0.0)
    w = v.witness
    qe = math.inf if w is None else w.quotient_E
    equal = decide(gallery.two_balls(gallery.TwoBallParams(1.0, 1.0, gallery.two_ball_distance(1.0, 1.0, 0.1),
                                                           0.002)), 0.0)
    limit = oracles.two_ball_limit_quotient(1.0, 0.5)
    errs = []
    for th in (0.1, 0.03, 0.01, 0.003):
        dist = gallery.two_ball_distance(1.0, 0.5, th)
        om = gallery.two_balls(gallery.TwoBallParams(1.0, 0.5, dist, 0.02 * th))
        errs.append(abs(om.length / om.signed_area / limit - 1))
    return [(f"theta_R = {theta_R:.3f} <= 0.15", theta_R <= 0.15),
            (f"decide = {v.status}", v.status == "nonexistence"),
            (f"witness quotient {qe:.6f} <= 2.02", qe <= 2.02),
            (f"domain quotient {q:.6f} >= 2.3", q >= 2.3),
            (f"equal balls: {equal.status}", equal.status == "unresolved"),
            (f"relative error to {limit:.4f}: " + ", ".join(f"{e:.4f}" for e in errs),
             errs[-1] <= 0.01 and all(b < a for a, b in zip(errs, errs[1:])))]


@criterion(6)
def test_ellipse():
    d = gallery.make_ellipse(2.0, 1.0, 4096)
    kb = kappa_bar(d, 4096)
    ok = giusti_criterion(d)
    q = d.length / d.signed_area
    q_ref = oracles.ellipse_perimeter_quad(2.0, 1.0) / (2 * math.pi)
    v = decide(d, 0.0)
    return [(f"kappa_bar = {kb:.6f} vs {oracles.ellipse_max_curvature(2.0, 1.0)} (2%)",
             abs(kb / oracles.ellipse_max_curvature(2.0, 1.0) - 1) <= 0.02),
            (f"P/|d| = {q:.6f} vs {q_ref:.6f}", abs(q - q_ref) <= 1e-3 and q < 2),
            (f"giusti_criterion = {ok}", ok is False),
            (f"decide = {v.status} via {v.criterion_path[-1]}",
             v.status == "nonexistence" and v.criterion_path[-1] == "convex_iff")]


SUITES = ("test_erosion_is_monotone", "test_opening_is_anti_extensive", "test_opening_is_idempotent",
          "test_vector_erosion_matches_raster", "test_strict_implies_weak", "test_rolling_implies_no_neck",
          "test_cheeger_scaling", "test_witnesses_are_sound", "test_quotient_monotone_in_gamma")


@criterion(7)
def test_property_suites():
    props.CASES.clear()
    t0 = time.perf_counter()
    for name in SUITES:
        getattr(props, name)()
    dt = time.perf_counter() - t0
    counts = {name: props.CASES[name] for name in SUITES}
    low = [n for n, c in counts.items() if c < 200]
    return [(f"{len(SUITES)} suites, min {min(counts.values())} cases" + (f", short: {low}" if low else ""),
             not low),
            (f"runtime {dt:.1f} s < 60 s", dt < 60.0)]


def _cli(argv):
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


def _gallery_session(tmp):
    """Every command on every family; returns the concatenated transcript."""
    lines = []
    for name in sorted(gallery.FAMILIES):
        code, text = _cli(["gallery", name])
        lines.append(f"{name} gallery {code} {text}")
        path = os.path.join(tmp, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        for cmd in ("analyze", "cheeger", "convex"):
            code, text = _cli([cmd, path])
            lines.append(f"{name} {cmd} {code} {text}")
    return "".join(lines)


@criterion(8)
def test_determinism(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    first = _gallery_session(str(a))
    second = _gallery_session(str(b))
    outs = []
    src = str(a / "two_balls.json")
    for seed, threads in (("0", "1"), ("12345", "4")):
        env = {**os.environ, "PYTHONHASHSEED": seed, "CAPGEO_THREADS": threads}
        res = subprocess.run([sys.executable, "-m", "capgeo", "analyze", src],
                             capture_output=True, env=env, check=False)
        outs.append((res.returncode, res.stdout))
    return [(f"in-process transcripts identical ({len(first)} bytes, {len(gallery.FAMILIES)} families)",
             first == second),
            ("subprocess runs identical across hash seeds and thread counts",
             outs[0] == outs[1] and outs[0][0] == 10)]
