"""Command-line front end.  Every command prints exactly one JSON object."""

from __future__ import annotations

import argparse
import logging
import math
import sys

from capgeo import gallery, jsonio, raster, svg
from capgeo.cheeger import classify
from capgeo.convex import giusti_criterion, is_convex, kappa_bar
from capgeo.geometry import Domain, InvalidDomainError, Tolerance, validate
from capgeo.morphology import erode
from capgeo.reach import reach_report
from capgeo.verdict import decide

log = logging.getLogger("capgeo")

EXIT_INPUT_ERROR = 1


class InputError(Exception):
    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


def _tolerance(args) -> Tolerance:
    parts = [p for p in args.tol.split(",") if p] if args.tol else []
    if len(parts) not in (0, 1, 3):
        raise InputError("bad_flag", "--tol takes eps_geom or eps_geom,eps_area,eps_root")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InputError("bad_flag", f"--tol is not numeric: {args.tol!r}") from None
    kw = {}
    if vals:
        kw["eps_geom"] = vals[0]
    if len(vals) == 3:
        kw["eps_area"], kw["eps_root"] = vals[1], vals[2]
    if any(not (math.isfinite(v) and v > 0) for v in vals):
        raise InputError("bad_flag", "tolerances must be positive")
    if args.samples < 16:
        raise InputError("bad_flag", "--samples must be at least 16")
    return Tolerance(n_samples=args.samples, **kw)


def _read_domain(path, tol) -> Domain:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError("io_error", str(exc)) from None
    try:
        obj = jsonio.loads(text)
    except ValueError as exc:
        raise InputError("malformed_json", str(exc)) from None
    try:
        d = Domain.from_json(obj)
    except (ValueError, TypeError) as exc:
        raise InputError("malformed_domain", str(exc)) from None
    diag = validate(d, tol)
    if not diag.ok:
        raise InputError("invalid_domain", f"{diag.violation}: {diag.message}")
    return d


def _write_svg(path, text):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args, tol):
    d = _read_domain(args.file, tol)
    if not (0.0 <= args.gamma <= 0.5 * math.pi):
        raise InputError("bad_flag", "--gamma must lie in [0, pi/2]")
    v = decide(d, args.gamma, tol)
    if args.svg:
        r = v.r_phys
        reg = erode(d, r, tol)
        # place the rolling disk on the inner parallel set, or at its first point
        center = None
        if len(reg.pieces):
            center = reg.pieces[0, 1:3]
        elif len(reg.points):
            center = reg.points[0]
        disk = None if center is None else (float(center[0]), float(center[1]), r)
        _write_svg(args.svg, svg.render(d, eroded=reg.components, points=reg.points.tolist(),
                                        witness=v.witness.subset if v.witness else None, disk=disk))
    return v.to_dict(), v.exit_code


def cmd_cheeger(args, tol):
    d = _read_domain(args.file, tol)
    res = classify(d, tol)
    if args.svg:
        _write_svg(args.svg, svg.render(d, cheeger=res.cheeger_set.components))
    return res.to_dict(), 0


def cmd_reach(args, tol):
    d = _read_domain(args.file, tol)
    if not (math.isfinite(args.radius) and args.radius > 0):
        raise InputError("bad_flag", "--radius must be positive")
    rep = reach_report(d, args.radius, tol)
    out = {"rolling": rep.rolling, "strict": rep.strict,
           "worst_antipodal_defect": rep.worst_antipodal_defect,
           "centers_checked": rep.centers_checked}
    if rep.warnings:
        out["warnings"] = rep.warnings
    return out, 0


def cmd_erode(args, tol):
    d = _read_domain(args.file, tol)
    if not (math.isfinite(args.radius) and args.radius >= 0):
        raise InputError("bad_flag", "--radius must be non-negative")
    reg = erode(d, args.radius, tol)
    r_area, r_comp, _, g = raster.erode(d, args.radius, args.grid)
    out = {"radius": args.radius, "area": reg.area, "n_components": len(reg),
           "degenerate": reg.degenerate(tol),
           "raster": {"grid": args.grid, "pixel": g.h, "area": r_area, "n_components": r_comp},
           "region": reg.to_json()}
    if args.svg:
        _write_svg(args.svg, svg.render(d, eroded=reg.components, points=reg.points.tolist()))
    return out, 0


def cmd_convex(args, tol):
    d = _read_domain(args.file, tol)
    conv = is_convex(d, tol)
    q = d.length / d.signed_area
    out = {"convex": conv, "kappa_bar": kappa_bar(d, tol=tol) if conv else None,
           "quotient": q, "giusti": giusti_criterion(d, tol) if conv else None}
    return out, 0


def _family_params(name, extra):
    if name not in gallery.FAMILIES:
        raise InputError("unknown_family", f"unknown family {name!r}; choose from {sorted(gallery.FAMILIES)}")
    defaults = gallery.FAMILIES[name][1]
    params = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise InputError("bad_flag", f"unexpected argument {tok!r}")
        key, _, val = tok[2:].partition("=")
        if not val:
            val = next(it, None)
            if val is None:
                raise InputError("bad_flag", f"missing value for --{key}")
        if key not in defaults:
            raise InputError("bad_flag", f"{name} has no parameter {key!r}; parameters: {sorted(defaults)}")
        try:
            params[key] = float(val)
        except ValueError:
            raise InputError("bad_flag", f"--{key} is not numeric: {val!r}") from None
    return params


def cmd_gallery(args, tol, extra):
    if args.family == "list":
        return {"families": {k: {"defaults": v[1], "description": v[2]}
                             for k, v in sorted(gallery.FAMILIES.items())}}, 0
    params = _family_params(args.family, extra)
    try:
        d = gallery.build(args.family, **params)
    except ValueError as exc:
        raise InputError("bad_parameters", str(exc)) from None
    used = dict(gallery.FAMILIES[args.family][1])
    used.update(params)
    obj = d.to_json()
    obj["family"] = args.family
    obj["params"] = used
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(obj) + "\n")
        return {"family": args.family, "params": used, "out": args.out}, 0
    return obj, 0


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", default=None,
                        help="eps_geom, or eps_geom,eps_area,eps_root (defaults 1e-7,1e-8,1e-9)")
    common.add_argument("--grid", type=int, default=1024, help="raster oracle resolution")
    common.add_argument("--samples", type=int, default=4096, help="boundary samples")
    common.add_argument("--json", action="store_true", help="JSON output (always on)")
    common.add_argument("--svg", default=None, metavar="PATH", help="write an SVG figure")
    common.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")

    p = argparse.ArgumentParser(prog="capgeo", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="existence verdict")
    a.add_argument("file")
    a.add_argument("--gamma", type=float, default=0.0)
    c = sub.add_parser("cheeger", parents=[common], help="Cheeger data and classification")
    c.add_argument("file")
    r = sub.add_parser("reach", parents=[common], help="weak and strict rolling ball")
    r.add_argument("file")
    r.add_argument("--radius", type=float, required=True)
    e = sub.add_parser("erode", parents=[common], help="inner parallel set")
    e.add_argument("file")
    e.add_argument("--radius", type=float, required=True)
    v = sub.add_parser("convex", parents=[common], help="curvature criterion")
    v.add_argument("file")
    g = sub.add_parser("gallery", parents=[common], help="build a family member or list families")
    g.add_argument("family")
    g.add_argument("--out", default=None)
    return p


COMMANDS = {"analyze": cmd_analyze, "cheeger": cmd_cheeger, "reach": cmd_reach,
            "erode": cmd_erode, "convex": cmd_convex}


def _error(kind, message):
    return {"error": {"type": kind, "message": message}}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = _parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        stdout.write(jsonio.dumps(_error("bad_arguments", "could not parse arguments")) + "\n")
        return EXIT_INPUT_ERROR
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if extra and args.command != "gallery":
            raise InputError("bad_arguments", f"unrecognised arguments: {' '.join(extra)}")
        if args.grid < 16:
            raise InputError("bad_flag", "--grid must be at least 16")
        tol = _tolerance(args)
        if args.command == "gallery":
            out, code = cmd_gallery(args, tol, extra)
        else:
            out, code = COMMANDS[args.command](args, tol)
    except InputError as exc:
        out, code = _error(exc.kind, str(exc)), EXIT_INPUT_ERROR
    except InvalidDomainError as exc:
        out, code = _error("invalid_domain", str(exc)), EXIT_INPUT_ERROR
    except (ValueError, RuntimeError) as exc:
        log.debug("failure", exc_info=True)
        out, code = _error("computation_error", str(exc)), EXIT_INPUT_ERROR
    stdout.write(jsonio.dumps(out) + "\n")
    stdout.flush()
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
