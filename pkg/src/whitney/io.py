"""JSON and CSV serialization of datasets, extensions and evaluation results."""

from __future__ import annotations

import csv
import json
import math
from fractions import Fraction
from pathlib import Path

from . import scalar as sc
from .basis import family_from_config
from .errors import WhitneyError
from .perturb import Dataset, PerturbationRecord
from .solve import AngleField, WhitneyExtension

SCHEMA = 1


class InputError(WhitneyError, ValueError):
    """Malformed input file; the message names the offending line or record."""


def _family_config(obj, overrides):
    fam = obj.get("family")
    cfg = {"kind": fam} if isinstance(fam, str) else dict(fam or {})
    for key, val in (overrides or {}).items():
        if val is not None:
            cfg["kind" if key == "family" else key] = val
    if not cfg.get("kind"):
        raise InputError("no basis family given (set `family` in the file or pass --family)")
    return cfg


def _infer_mode(points, values):
    def has_float(v):
        if isinstance(v, bool):
            return False
        if isinstance(v, float):
            return True
        if isinstance(v, (list, tuple)):
            return any(has_float(w) for w in v)
        return False
    return sc.FLOAT if has_float(points) or has_float(values) else sc.EXACT


def dataset_from_obj(obj, overrides=None, mode=None):
    if not isinstance(obj, dict):
        raise InputError("dataset must be a JSON object with `points` and `values`")
    if "points" not in obj or "values" not in obj:
        raise InputError("dataset needs `points` and `values`")
    fam = family_from_config(_family_config(obj, overrides))
    mode = mode or obj.get("mode") or _infer_mode(obj["points"], obj["values"])
    points, values = [], []
    for i, raw in enumerate(obj["points"]):
        try:
            points.append(fam.make_point(raw, mode))
        except (WhitneyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"point {i + 1}: {exc}") from exc
    for i, raw in enumerate(obj["values"]):
        try:
            values.append(sc.from_json(raw, mode))
        except (WhitneyError, ValueError, TypeError) as exc:
            raise InputError(f"value {i + 1}: {exc}") from exc
    try:
        return Dataset(points, values, fam), mode
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _csv_cell(text, mode):
    text = text.strip()
    if mode == sc.EXACT:
        return text
    return float(Fraction(text)) if "/" in text else float(text)


def dataset_from_csv(path, overrides, mode=None):
    """Rows ``x1, ..., xk, y_re, y_im``; a header row starting with ``x`` is skipped."""
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].strip().startswith("#"):
                continue
            if row[0].strip().lower().startswith("x"):
                continue
            rows.append((lineno, [c for c in row]))
    if not rows:
        raise InputError(f"{path}: no data rows")
    if mode is None:
        mode = sc.FLOAT if any("." in c or "e" in c.lower() for _, r in rows for c in r) \
            else sc.EXACT
    fam = family_from_config(_family_config({}, overrides))
    points, values = [], []
    for lineno, row in rows:
        if len(row) < 3:
            raise InputError(f"{path}:{lineno}: need coordinates plus y_re, y_im")
        try:
            coords = [_csv_cell(c, mode) for c in row[:-2]]
            y_re, y_im = (_csv_cell(c, mode) for c in row[-2:])
            if mode == sc.EXACT:
                y = sc.GaussianRational(Fraction(y_re), Fraction(y_im))
            else:
                y = complex(y_re, y_im)
            points.append(fam.make_point(coords if len(coords) > 1 else coords[0], mode))
            values.append(y)
        except (WhitneyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from exc
    return Dataset(points, values, fam), mode


def load_dataset(path, overrides=None, mode=None):
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return dataset_from_csv(path, overrides, mode)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    return dataset_from_obj(obj, overrides, mode)


def dataset_to_obj(d, mode=None):
    mode = mode or d.mode
    return {
        "schema": SCHEMA,
        "family": d.family.descriptor(),
        "mode": mode,
        "points": [d.family.point_to_json(x) for x in d.points],
        "values": [sc.to_json(y) for y in d.values],
    }


# extensions ----------------------------------------------------------------------

def _finite(x):
    return x if x is None or math.isfinite(x) else None


def extension_to_obj(e, report=None):
    fam = e.family
    out = {
        "schema": SCHEMA,
        "family": fam.descriptor(),
        "arithmetic": e.arithmetic,
        "mode": e.mode,
        "ells": list(e.ells),
        "coeffs": [sc.to_json(a) for a in e.coeffs],
        "residual": _finite(e.residual),
        "delta": str(e.delta) if isinstance(e.delta, Fraction) else e.delta,
    }
    if e.perturbation is not None:
        out["perturbation"] = e.perturbation.to_json()
    if e.original_points is not None:
        out["original_points"] = [fam.point_to_json(x) for x in e.original_points]
    if e.perturbed_points is not None:
        out["perturbed_points"] = [fam.point_to_json(x) for x in e.perturbed_points]
    if e.angle_field is not None:
        out["angle_field"] = e.angle_field.to_json()
    if report is not None:
        out["representation"] = report.to_json()
    return out


def extension_from_obj(obj):
    if obj.get("schema") != SCHEMA:
        raise InputError(f"unsupported schema {obj.get('schema')!r}")
    fam = family_from_config(obj["family"])
    arith = obj.get("arithmetic", sc.EXACT)
    exact = arith == sc.EXACT
    coeffs = [sc.from_json(a, arith) for a in obj["coeffs"]]
    pts_mode = arith

    def points(key):
        if key not in obj:
            return None
        return [fam.make_point(raw, pts_mode) for raw in obj[key]]

    pert = obj.get("perturbation")
    record = PerturbationRecord.from_json(pert, exact) if pert is not None else None
    field_ = AngleField.from_json(obj["angle_field"]) if "angle_field" in obj else None
    delta = obj.get("delta", 0)
    if isinstance(delta, str):
        delta = Fraction(delta)
    e = WhitneyExtension(fam, list(obj["ells"]), coeffs, arith, record, obj.get("mode"),
                         obj.get("residual"), points("original_points"),
                         points("perturbed_points"), field_, delta)
    return e


def load_extension(path):
    try:
        return extension_from_obj(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: {exc.msg}") from exc


def write_json(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path is None or str(path) == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")
    return text


def write_values(rows, path):
    """``rows`` are ``(coords, value, flag)`` triples; CSV or JSON by file suffix."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            width = max((len(c) for c, _, _ in rows), default=0)
            w.writerow([f"x{k + 1}" for k in range(width)] + ["f_re", "f_im", "flag"])
            for coords, val, flag in rows:
                w.writerow(list(coords) + _value_cells(val) + [flag or ""])
        return
    write_json({"schema": SCHEMA, "rows": [
        {"point": list(c), "value": sc.to_json(v) if v is not None else None,
         "flag": flag} for c, v, flag in rows]}, path)


def _value_cells(val):
    if val is None:
        return ["", ""]
    if isinstance(val, sc.GaussianRational):
        return [str(val.re), str(val.im)]
    z = complex(val)
    return [repr(z.real), repr(z.imag)]
