"""Command-line front end: ``whitney fit | eval | check | report``.

Exit codes: 0 success, 1 invalid input or validation failure,
2 data not in general position, 3 tolerance unreachable,
4 no all-nonzero coefficient vector found by ``--maximize-summands``.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import io
from . import scalar as sc
from .errors import (MaximalityUnreachable, NotInGeneralPosition, ToleranceUnreachable,
                     WhitneyError)
from .geometry import HyperbolicCoords, QuadricPoint, Signature, from_hyperbolic
from .perturb import general_position_check, projection_collisions
from .solve import (exact_correct, fit, maximize_summands, representation_report, residual,
                    residual_exact2)

log = logging.getLogger("whitney")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_GENERAL_POSITION = 2
EXIT_TOLERANCE = 3
EXIT_MAXIMALITY = 4


def _setup_logging():
    level = os.environ.get("WHITNEY_LOG", "WARNING").upper()
    if level.isdigit():
        level = int(level)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)


def _overrides(args):
    out = {"family": args.family, "p": args.p, "q": args.q, "orientation": args.orientation,
           "group": args.group}
    if args.ell_min is not None:
        out["ell_min"] = args.ell_min
    return out


def _parse_eps(text, mode):
    try:
        val = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise io.InputError(f"bad --eps {text!r}") from exc
    if val <= 0:
        raise io.InputError("--eps must be positive")
    return val if mode == sc.EXACT else float(val)


def _fmt_point(fam, x):
    raw = fam.point_to_json(x)
    if isinstance(raw, list):
        return "(" + ",".join(str(v) for v in raw) + ")"
    return str(raw)


def _conditioning(e, d):
    """Float-mode 2-norm condition number of the reduced Vandermonde matrix."""
    try:
        vs = [complex(nd.v) for nd in d.with_points(e.perturbed_points).nodes()]
    except Exception:  # diagnostics only
        return None
    n = len(vs)
    m = np.array([[v ** k for k in range(n)] for v in vs], dtype=complex)
    return float(np.linalg.cond(m))


def cmd_fit(args):
    t0 = time.perf_counter()
    d, mode = io.load_dataset(args.data, _overrides(args), args.mode)
    eps = _parse_eps(args.eps, mode)
    d.check_nonconstant()
    if args.maximize_summands:
        e = maximize_summands(d, None, eps)
    else:
        # the correction restores exact values, so the plain fit need not meet eps
        e = fit(d, None, eps, require_tolerance=not args.exact_correct)
    if args.exact_correct:
        e = exact_correct(e, d)
    e.residual = residual(e, d)
    if args.exact_correct and not e.residual < eps:
        raise ToleranceUnreachable(f"corrected residual {e.residual:.3e} misses {float(eps):.3e}",
                                   extension=e, residual=e.residual)
    rep = representation_report(e)
    out = io.extension_to_obj(e, rep)
    out["status"] = "OK"
    out["target_eps"] = str(eps) if isinstance(eps, Fraction) else eps
    if e.arithmetic == sc.EXACT and mode == sc.EXACT:
        out["residual_exact_squared"] = str(residual_exact2(e, d))
    else:
        out["condition_number"] = _conditioning(e, d)
    out["general_position"] = general_position_check(d).to_json()
    out["timing_seconds"] = time.perf_counter() - t0
    io.write_json(out, args.out)
    return EXIT_OK


def _grid_axis(text):
    lo, hi, n = text.split(":")
    return np.linspace(float(lo), float(hi), int(n))


def parse_grid(spec):
    """``"t=0:2:64;s=circle:64"`` -> ``{"t": array, "s": ("circle", 64)}``."""
    axes = {}
    for part in spec.replace(",", ";").split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        key, val = key.strip(), val.strip()
        if val.startswith("circle"):
            n = int(val.split(":")[1]) if ":" in val else 64
            axes[key] = ("circle", n)
        else:
            axes[key] = _grid_axis(val)
    return axes


def grid_points(fam, spec):
    """Float points of the family on a tensor grid.

    Hyperboloid families use chart axes ``t`` and ``s=circle:N``; the X(2,2)+
    family goes through the swap ``(x, y) -> (y, x)``.  The half plane takes
    ``x`` and ``y``, the line ``x``, the sphere ``theta`` and ``phi``.
    """
    axes = parse_grid(spec)
    kind = fam.kind
    pts = []
    if kind in ("hyperboloid_minus", "ads22"):
        sig = fam.signature if kind == "hyperboloid_minus" else Signature(2, 2, -1)
        ts = axes.get("t")
        s_ax = axes.get("s", ("circle", 64))
        if ts is None:
            raise io.InputError("grid needs a t axis")
        phis = np.linspace(0.0, 2 * math.pi, s_ax[1], endpoint=False)
        r = (1.0,) + (0.0,) * (sig.p - 1)
        for t in ts:
            for ph in phis:
                s = (math.cos(ph), math.sin(ph)) + (0.0,) * (sig.q - 2)
                x = from_hyperbolic(HyperbolicCoords(r, s, float(t)), sig)
                if kind == "ads22":
                    x = x.swapped()
                pts.append(x)
    elif kind == "half_plane":
        for x in axes["x"]:
            for y in axes["y"]:
                pts.append(complex(x, y))
    elif kind == "real_line":
        pts = [complex(x) for x in axes["x"]]
    elif kind == "sphere2":
        sig = fam.signature
        for th in axes["theta"]:
            for ph in axes["phi"]:
                c = (math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th))
                pts.append(QuadricPoint(c, sig, False))
    else:
        raise io.InputError(f"no grid support for family {kind!r}")
    return pts


def _load_points(path, fam, mode):
    import json
    from pathlib import Path
    p = Path(path)
    if p.suffix.lower() == ".csv":
        import csv
        pts = []
        with open(p, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row[0].strip().lower().startswith(("x", "#")):
                    continue
                try:
                    cells = [c.strip() for c in row]
                    if mode == sc.FLOAT:
                        cells = [float(Fraction(c)) if "/" in c else float(c) for c in cells]
                    pts.append(fam.make_point(cells if len(cells) > 1 else cells[0], mode))
                except (WhitneyError, ValueError) as exc:
                    raise io.InputError(f"{path}:{lineno}: {exc}") from exc
        return pts
    obj = json.loads(p.read_text())
    raw = obj["points"] if isinstance(obj, dict) else obj
    if mode is None:
        mode = io._infer_mode(raw, [])
    out = []
    for i, r in enumerate(raw):
        try:
            out.append(fam.make_point(r, mode))
        except (WhitneyError, ValueError) as exc:
            raise io.InputError(f"point {i + 1}: {exc}") from exc
    return out


def cmd_eval(args):
    e = io.load_extension(args.extension)
    fam = e.family
    if args.grid:
        pts = grid_points(fam, args.grid)
    elif args.points:
        pts = _load_points(args.points, fam, args.mode)
    else:
        raise io.InputError("eval needs --points or --grid")
    rows = []
    for x in pts:
        try:
            val = e.evaluate(x)
            flag = None
        except (WhitneyError, ZeroDivisionError, ValueError) as exc:
            val, flag = None, f"undefined: {exc}"
        raw = fam.point_to_json(x)
        rows.append((raw if isinstance(raw, list) else [raw], val, flag))
    out = args.out or "-"
    if out == "-":
        io.write_json({"schema": io.SCHEMA, "rows": [
            {"point": c, "value": sc.to_json(v) if v is not None else None, "flag": f}
            for c, v, f in rows]})
    else:
        io.write_values(rows, out)
    return EXIT_OK


def cmd_check(args):
    try:
        d, mode = io.load_dataset(args.data, _overrides(args), args.mode)
    except io.InputError as exc:
        report = {"schema": io.SCHEMA, "validation": "FAIL", "error": str(exc)}
        print(f"validation: FAIL ({exc})", file=sys.stderr)
        io.write_json(report, args.out)
        return EXIT_INVALID
    fam = d.family
    gp = general_position_check(d)
    coll = projection_collisions(d)
    lines = ["validation: PASS", f"general position: {gp}"]
    for j, i, v in coll:
        lines.append(f"collision: points {j + 1},{i + 1} project to {_projection_text(fam, d.points[i])}")
    if not coll:
        lines.append("collisions: PASS")
    nonconst = d.n < 2 or any(y != d.values[0] for y in d.values[1:])
    lines.append("nonconstant values: " + ("PASS" if nonconst else "FAIL"))
    print("\n".join(lines), file=sys.stderr)
    io.write_json({
        "schema": io.SCHEMA,
        "validation": "PASS",
        "general_position": gp.to_json(),
        "collisions": [{"points": [j + 1, i + 1],
                        "projection": _projection_text(fam, d.points[i])} for j, i, _ in coll],
        "nonconstant": nonconst,
    }, args.out)
    return EXIT_OK


def _projection_text(fam, x):
    if isinstance(x, QuadricPoint):
        if fam.kind == "hyperboloid_minus":
            blk = x.negative()[:2]
        else:
            blk = x.coords[:2]
        return "(" + ",".join(str(v) for v in blk) + ")"
    return _fmt_point(fam, x)


def cmd_report(args):
    e = io.load_extension(args.extension)
    rep = representation_report(e)
    out = {"schema": io.SCHEMA, "family": e.family.descriptor(), "mode": e.mode,
           "ells": list(e.ells), "residual": e.residual,
           "representation": rep.to_json()}
    if args.data:
        d, _ = _dataset_for_extension(args.data, e)
        out["residual"] = residual(e, d)
        if e.arithmetic == sc.EXACT and d.mode == sc.EXACT:
            out["residual_exact_squared"] = str(residual_exact2(e, d))
    if e.perturbation is not None:
        out["perturbation"] = e.perturbation.to_json()
    io.write_json(out, args.out)
    return EXIT_OK


def _dataset_for_extension(path, e):
    return io.load_dataset(path, dict(e.family.descriptor()), e.arithmetic)


def build_parser():
    ap = argparse.ArgumentParser(prog="whitney", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def family_flags(p):
        p.add_argument("--family", help="basis family (ads22, hyperboloid_minus, sphere2, "
                                        "half_plane, real_line, group)")
        p.add_argument("--p", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--orientation", type=int, choices=(1, -1))
        p.add_argument("--group", help="SU(p,q), SU(1,1) or Sp(n,R)")
        p.add_argument("--ell-min", type=int, dest="ell_min")
        p.add_argument("--mode", choices=(sc.EXACT, sc.FLOAT))

    f = sub.add_parser("fit", help="fit a Whitney extension to a dataset")
    f.add_argument("data")
    family_flags(f)
    f.add_argument("--eps", default="1/1000000")
    f.add_argument("--exact-correct", action="store_true", dest="exact_correct")
    f.add_argument("--maximize-summands", action="store_true", dest="maximize_summands")
    f.add_argument("--out", default="-")
    f.set_defaults(func=cmd_fit)

    e = sub.add_parser("eval", help="evaluate a fitted extension")
    e.add_argument("extension")
    e.add_argument("--points")
    e.add_argument("--grid", help='e.g. "t=0:2:64;s=circle:64"')
    e.add_argument("--mode", choices=(sc.EXACT, sc.FLOAT))
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="diagnose a dataset without fitting")
    c.add_argument("data")
    family_flags(c)
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("report", help="summarize a fitted extension")
    r.add_argument("extension")
    r.add_argument("--data", help="dataset to recompute the residual against")
    r.add_argument("--out", default="-")
    r.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotInGeneralPosition as exc:
        print(f"error: not in general position: {exc}", file=sys.stderr)
        return EXIT_GENERAL_POSITION
    except ToleranceUnreachable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except MaximalityUnreachable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MAXIMALITY
    except (WhitneyError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
