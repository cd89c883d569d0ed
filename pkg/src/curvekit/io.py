"""Reading point clouds and writing reports as CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .graph import GraphError, as_distance_matrix
from .report import CurvatureReport

SCHEMA = 1


def fmt(x) -> str:
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return str(x)


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return fmt(x)
    return x


def read_point_cloud(path, distance_matrix: bool = False) -> np.ndarray:
    """Distance matrix from a CSV of coordinates (one point per row) or a square matrix."""
    with open(path, encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    try:
        data = [[float(x) for x in r] for r in rows]
    except ValueError:
        # tolerate one header line
        try:
            data = [[float(x) for x in r] for r in rows[1:]]
        except ValueError as exc:
            raise GraphError(f"{path}: non-numeric entry ({exc})") from None
    if not data or len({len(r) for r in data}) != 1:
        raise GraphError(f"{path}: rows must be nonempty and of equal length")
    return as_distance_matrix(np.array(data), distance_matrix)


def object_key(key) -> str:
    return key if isinstance(key, str) else "|".join(key)


def reports_to_csv(reports: list[CurvatureReport]) -> str:
    """Long table: one row per object per model, parameters on every row."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "params", "kind", "object", "value"])
    for rep in reports:
        params = rep.param_string()
        for key, val in rep.values.items():
            w.writerow([rep.model, params, rep.kind, object_key(key), fmt(float(val))])
    return buf.getvalue()


def reports_to_wide_csv(reports: list[CurvatureReport]) -> str:
    """One row per object, one column per model (column names carry the parameters)."""
    cols = [f"{r.model}[{r.param_string()}]" if r.params else r.model for r in reports]
    keys: dict = {}
    for r in reports:
        for k in r.values:
            keys.setdefault(k, None)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "object", *cols])
    kind = reports[0].kind if reports else ""
    for k in keys:
        w.writerow([kind, object_key(k), *(fmt(float(r.values[k])) if k in r.values else "" for r in reports)])
    return buf.getvalue()


def reports_to_json(reports: list[CurvatureReport]) -> str:
    doc = {
        "schema": SCHEMA,
        "reports": [
            {
                "model": r.model,
                "kind": r.kind,
                "params": r.params,
                "values": [
                    {"object": [k] if isinstance(k, str) else list(k), "value": _jsonable(float(v))}
                    for k, v in r.values.items()
                ],
            }
            for r in reports
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, default=_jsonable)
