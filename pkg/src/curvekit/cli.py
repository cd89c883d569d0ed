"""``curvekit`` command line.

Exit codes: 0 success, 2 unreadable or malformed input, 3 infeasible
parameters, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .complex import clique_complex, load_simplex_weights, vietoris_rips
from .edge_curvature import forman_complex_report, forman_report, ollivier_report
from .flow import delete_negative_communities, ricci_flow, surgery, threshold_sweep
from .graph import GraphError, read_graph
from .io import SCHEMA, dumps, fmt, read_point_cloud, reports_to_csv, reports_to_json, reports_to_wide_csv
from .metric_curvature import haantjes_report, menger_report, sectional_edge_report, sectional_vertex_report
from .pointcloud import auto_radii, scalar_estimate
from .transport import TransportError
from .vertex_curvature import (
    bakry_emery_report,
    resistance_edge_report,
    resistance_vertex_report,
    scalar_orc_report,
    scalar_report,
)

EDGE_MODELS = ("forman", "ollivier", "menger", "haantjes", "resistance", "sectional")
VERTEX_MODELS = EDGE_MODELS + ("scalar-ollivier", "bakry-emery")

EXIT_PARSE, EXIT_INFEASIBLE, EXIT_NUMERIC = 2, 3, 4


class InputError(Exception):
    pass


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_graph(path: str):
    try:
        return read_graph(path)
    except (OSError, GraphError) as exc:
        raise InputError(str(exc)) from exc


def _load_cloud(path: str, distance_matrix: bool):
    try:
        return read_point_cloud(path, distance_matrix)
    except (OSError, GraphError) as exc:
        raise InputError(str(exc)) from exc


def _models(spec: str, level: str) -> list[str]:
    allowed = EDGE_MODELS if level == "edge" else VERTEX_MODELS
    if spec == "all":
        return list(allowed)
    names = [m.strip() for m in spec.split(",") if m.strip()]
    bad = [m for m in names if m not in allowed]
    if bad or not names:
        raise ValueError(f"unknown {level} model(s) {bad}; choose from {', '.join(allowed)} or 'all'")
    return names


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"--alpha must lie in [0, 1], got {alpha!r}")


def cmd_curvature(a) -> None:
    _check_alpha(a.alpha)
    g = _load_graph(a.graph)
    edge_builders = {
        "forman": lambda: forman_report(g),
        "ollivier": lambda: ollivier_report(g, a.alpha, hop=a.hop_metric),
        "menger": lambda: menger_report(g),
        "haantjes": lambda: haantjes_report(g, a.max_len),
        "resistance": lambda: resistance_edge_report(g, a.denominator),
        "sectional": lambda: sectional_edge_report(g, a.sample, a.seed),
    }
    names = _models(a.model, a.level)
    if a.model == "all" and not g.is_connected():
        # resistance curvature needs a connected graph
        names = [m for m in names if m != "resistance"]
    reports = []
    for name in names:
        if a.level == "edge":
            reports.append(edge_builders[name]())
        elif name == "bakry-emery":
            reports.append(bakry_emery_report(g))
        elif name == "scalar-ollivier":
            reports.append(scalar_orc_report(g, a.alpha))
        elif name == "resistance":
            reports.append(resistance_vertex_report(g))
        elif name == "sectional":
            reports.append(sectional_vertex_report(g, a.sample, a.seed))
        else:
            reports.append(scalar_report(g, edge_builders[name]()))
    if a.format == "json":
        text = reports_to_json(reports)
    elif a.model == "all":
        text = reports_to_wide_csv(reports)
    else:
        text = reports_to_csv(reports)
    _write(text, a.output)


def cmd_complex(a) -> None:
    if a.points:
        d = _load_cloud(a.input, a.distance_matrix)
        if a.eps is None:
            raise ValueError("--eps is required with --points")
        K = vietoris_rips(d, a.eps, a.max_dim, distance_matrix=True)
    else:
        K = clique_complex(_load_graph(a.input), a.max_dim)
    if a.weights:
        try:
            text = Path(a.weights).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(str(exc)) from exc
        K = load_simplex_weights(K, text)
    dims = range(K.max_dim + 1) if a.dim is None else [a.dim]
    reports = [forman_complex_report(K, p, weighted=a.weighted and p == 1) for p in dims]
    reports = [r for r in reports if r.values]
    _write(reports_to_json(reports) if a.format == "json" else reports_to_csv(reports), a.output)


def _partition_csv(assign) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex", "label", "method", "params"])
    params = ";".join(f"{k}={fmt(v)}" for k, v in sorted(assign.method.items()) if k != "method")
    for v, c in assign.labels.items():
        w.writerow([v, c, assign.method["method"], params])
    return buf.getvalue()


def cmd_communities(a) -> None:
    _check_alpha(a.alpha)
    g = _load_graph(a.graph)
    if a.method == "deletion":
        radius = None if a.recompute == "exact" else int(a.recompute)
        assign = delete_negative_communities(g, a.alpha, radius)
        if a.format == "json":
            _write(dumps({"schema": SCHEMA, "labels": assign.labels, "method": assign.method}) + "\n", a.output)
        else:
            _write(_partition_csv(assign), a.output)
        return
    state = ricci_flow(g, a.iters, a.alpha)
    weights = [state.graph.weight(*e) for e in state.graph.edges]
    median = float(np.median(weights)) if weights else 0.0
    if a.threshold in ("sweep", "auto"):
        cut = a.threshold_factor * median
    else:
        cut = float(a.threshold)
        if not cut > 0:
            raise ValueError("threshold must be positive")
    assign = surgery(state, cut)
    assign.method.update({"iters": a.iters, "alpha": a.alpha})
    if a.format == "json":
        _write(dumps({"schema": SCHEMA, "labels": assign.labels, "method": assign.method}) + "\n", a.output)
    else:
        _write(_partition_csv(assign), a.output)
    if a.threshold == "sweep":
        sweep = {
            "schema": SCHEMA,
            "method": "ricci-flow",
            "params": {"iters": a.iters, "alpha": a.alpha},
            "median_weight": median,
            "sweep": [{"threshold": t, "communities": c} for t, c in threshold_sweep(state)],
        }
        target = a.sweep_output or (str(Path(a.output).with_suffix(".sweep.json")) if a.output else "threshold_sweep.json")
        Path(target).write_text(dumps(sweep) + "\n", encoding="utf-8")


def cmd_flow(a) -> None:
    _check_alpha(a.alpha)
    g = _load_graph(a.graph)
    state = ricci_flow(g, a.iters, a.alpha)
    lines = []
    params = {"alpha": a.alpha, "iters": a.iters, "floor": state.floor}
    for t, (kappa, weights) in enumerate(zip(state.curvature_history, state.weight_history), 1):
        for e in g.edges:
            rec = {
                "schema": SCHEMA,
                "model": "ollivier-ricci-flow",
                "params": params,
                "iter": t,
                "edge": list(g.edge_label(e)),
                "weight": weights[e],
                "curvature": kappa[e],
            }
            lines.append(dumps(rec))
    _write("\n".join(lines) + ("\n" if lines else ""), a.output)


def _parse_radii(text: str):
    if text == "auto":
        return None
    try:
        return np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise ValueError(f"--radii must be 'auto' or comma-separated numbers, got {text!r}") from None


def cmd_scalar_cloud(a) -> None:
    d = _load_cloud(a.cloud, a.distance_matrix)
    radii = _parse_radii(a.radii)
    rows = []
    for x in range(len(d)):
        r = auto_radii(d, x) if radii is None else radii
        rows.append((x, scalar_estimate(d, x, r, a.n)))
    params = f"n={a.n};radii={a.radii}"
    if a.format == "json":
        doc = {
            "schema": SCHEMA,
            "model": "ball-volume-scalar",
            "params": {"n": a.n, "radii": a.radii},
            "values": [{"index": x, "scalar_estimate": s} for x, s in rows],
        }
        _write(dumps(doc) + "\n", a.output)
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "scalar_estimate", "model", "params"])
    for x, s in rows:
        w.writerow([x, fmt(s), "ball-volume-scalar", params])
    _write(buf.getvalue(), a.output)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvekit", description="Discrete curvature of graphs, complexes and point clouds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-o", "--output", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    c = sub.add_parser("curvature", help="edge or vertex curvature of a graph")
    c.add_argument("graph", help="edge list: 'u v [w]' per line")
    c.add_argument("--model", default="forman,ollivier", help=f"comma list or 'all' ({', '.join(VERTEX_MODELS)})")
    c.add_argument("--level", choices=("edge", "vertex"), default="edge")
    c.add_argument("--alpha", type=float, default=0.5)
    c.add_argument("--max-len", type=int, default=4, help="longest path for Haantjes-Ricci")
    c.add_argument("--hop-metric", action="store_true", help="Ollivier distances in hops instead of weights")
    c.add_argument("--denominator", choices=("resistance", "weight"), default="resistance")
    c.add_argument("--sample", type=int, default=None, help="sectional: number of sampled triples")
    c.add_argument("--seed", type=int, default=0)
    common(c)
    c.set_defaults(func=cmd_curvature)

    k = sub.add_parser("complex", help="Forman curvature on a clique or Vietoris-Rips complex")
    k.add_argument("input", help="edge list, or point cloud with --points")
    k.add_argument("--points", action="store_true", help="input is a point cloud; build Vietoris-Rips")
    k.add_argument("--distance-matrix", action="store_true")
    k.add_argument("--eps", type=float)
    k.add_argument("--max-dim", type=int, default=2)
    k.add_argument("--dim", type=int, default=None, help="only simplices of this dimension")
    k.add_argument("--weights", help="simplex weight file: 'v1 ... vk w' per line")
    k.add_argument("--weighted", action="store_true", help="weighted formula for edges")
    common(k)
    k.set_defaults(func=cmd_complex)

    m = sub.add_parser("communities", help="curvature-based community detection")
    m.add_argument("graph")
    m.add_argument("--method", choices=("ricci-flow", "deletion"), default="ricci-flow")
    m.add_argument("--iters", type=int, default=20)
    m.add_argument("--alpha", type=float, default=0.5)
    m.add_argument("--threshold", default="auto", help="'auto', 'sweep' or a weight cutoff")
    m.add_argument("--threshold-factor", type=float, default=4.0, help="auto cutoff as a multiple of the median weight")
    m.add_argument("--recompute", default="2", help="hop radius for re-evaluation, or 'exact'")
    m.add_argument("--sweep-output", help="where to write the threshold sweep JSON")
    common(m)
    m.set_defaults(func=cmd_communities)

    f = sub.add_parser("flow", help="Ollivier-Ricci flow trace as JSON lines")
    f.add_argument("graph")
    f.add_argument("--iters", type=int, default=20)
    f.add_argument("--alpha", type=float, default=0.5)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_flow)

    s = sub.add_parser("scalar-cloud", help="ball-volume scalar curvature of a point cloud")
    s.add_argument("cloud", help="CSV of coordinates, or distance matrix with --distance-matrix")
    s.add_argument("--n", type=int, required=True, help="intrinsic dimension")
    s.add_argument("--radii", default="auto")
    s.add_argument("--distance-matrix", action="store_true")
    common(s)
    s.set_defaults(func=cmd_scalar_cloud)
    return p


def _fail(code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"level": "error", "exit": code, "type": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        return _fail(EXIT_PARSE, exc)
    except (TransportError, np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        return _fail(EXIT_NUMERIC, exc)
    except (GraphError, ValueError, KeyError) as exc:
        return _fail(EXIT_INFEASIBLE, exc)
    except Exception as exc:  # noqa: BLE001
        return _fail(EXIT_NUMERIC, exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
