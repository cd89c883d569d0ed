"""Metric curvatures: sectional (ball expansion), Menger and Haantjes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, Metric
from .report import CurvatureReport, pmap

TRIANGLE_TOL = 1e-12
EXHAUSTIVE_LIMIT = 100_000
DEFAULT_MAX_LEN = 4
MAX_LEN_CAP = 8


@dataclass(frozen=True)
class VertexTriple:
    v: tuple[int, int, int]
    d12: float
    d13: float
    d23: float
    r: tuple[float, float, float]


def gromov_products(d12: float, d13: float, d23: float) -> tuple[float, float, float]:
    """Radii of three pairwise tangent balls: ``r_i + r_j = d_ij``."""
    scale = max(d12, d13, d23, 1.0)
    r1 = 0.5 * (d12 + d13 - d23)
    r2 = 0.5 * (d12 + d23 - d13)
    r3 = 0.5 * (d13 + d23 - d12)
    if min(r1, r2, r3) < -TRIANGLE_TOL * scale:
        raise GraphError(f"triangle inequality violated by distances {(d12, d13, d23)}")
    return max(r1, 0.0), max(r2, 0.0), max(r3, 0.0)


def _ratios(dist: np.ndarray, r: float) -> np.ndarray:
    # d / r with the convention 0/0 = 0 and d/0 = inf for d > 0
    if r > 0:
        return dist / r
    return np.where(dist == 0, 0.0, np.inf)


def _expansion(rows: Sequence[np.ndarray], radii: Sequence[float]) -> float:
    worst = np.zeros_like(rows[0])
    for row, r in zip(rows, radii):
        np.maximum(worst, _ratios(row, r), out=worst)
    return float(worst.min())


def vertex_triple(g: Graph, t, metric: Metric | None = None) -> VertexTriple:
    idx = tuple(g.index(x) for x in t)
    if len(set(idx)) != 3:
        raise GraphError("a triple needs three distinct vertices")
    d = metric or Metric(g)
    a, b, c = idx
    d12, d13, d23 = d(a, b), d(a, c), d(b, c)
    if not all(map(math.isfinite, (d12, d13, d23))):
        raise GraphError("triple spans several components")
    return VertexTriple(idx, d12, d13, d23, gromov_products(d12, d13, d23))


def sectional_triple(g: Graph, t, metric: Metric | None = None) -> float:
    """Least common scaling of the Gromov balls at which all three meet in a vertex."""
    metric = metric or Metric(g)
    # sorted order keeps the float result identical under permutation
    tri = vertex_triple(g, sorted(g.index(x) for x in t), metric)
    rho = _expansion([metric.row(x) for x in tri.v], tri.r)
    # 1 <= rho <= 2 holds in any metric space; clip the rounding in the half-sums
    return min(max(rho, 1.0), 2.0)


def expansion_constant(d, points: Sequence[int], radii: Sequence[float]) -> float:
    """``min_x max_i d(x_i, x) / r_i`` over every vertex ``x`` of the metric."""
    mat = d.matrix() if isinstance(d, Metric) else np.asarray(d, float)
    pts = [int(p) for p in points]
    if len(pts) != len(radii) or not pts:
        raise GraphError("need one radius per point")
    if any(r < 0 for r in radii):
        raise GraphError("radii must be nonnegative")
    for (i, p), (j, q) in combinations(enumerate(pts), 2):
        dij = mat[p, q]
        if not math.isfinite(dij):
            raise GraphError("points span several components")
        if radii[i] + radii[j] < dij - TRIANGLE_TOL * max(dij, 1.0):
            raise GraphError(f"balls at {p} and {q} do not intersect pairwise")
    return _expansion([mat[p] for p in pts], radii)


def _triples_mean(g: Graph, fixed: tuple[int, ...], pool: list[int], k: int, sample, seed: int, metric: Metric):
    """Mean sectional curvature over triples ``fixed + (k vertices from pool)``."""
    total = math.comb(len(pool), k)
    if total == 0:
        raise GraphError("component too small for a vertex triple")
    if sample is None and total > EXHAUSTIVE_LIMIT:
        sample = EXHAUSTIVE_LIMIT
    if sample is None or sample >= total:
        combos = list(combinations(pool, k))
    else:
        rng = np.random.default_rng(seed)
        combos = [tuple(rng.choice(pool, size=k, replace=False)) for _ in range(int(sample))]
    vals = [sectional_triple(g, fixed + tuple(c), metric) for c in combos]
    return float(np.mean(vals)), len(combos)


def _component_pool(g: Graph, exclude: set[int]) -> list[int]:
    comp = g.components()
    c = comp[next(iter(exclude))]
    return [x for x in range(g.n) if comp[x] == c and x not in exclude]


def sectional_edge(g: Graph, u, v, sample: int | None = None, seed: int = 0, metric: Metric | None = None) -> float:
    """Mean sectional curvature over triples containing both ends of ``u-v``.

    ``sample=None`` enumerates every triple unless there are more than
    ``EXHAUSTIVE_LIMIT``, in which case that many are drawn with ``seed``.
    """
    i, j = g.edge_key(u, v)
    metric = metric or Metric(g)
    return _triples_mean(g, (i, j), _component_pool(g, {i, j}), 1, sample, seed, metric)[0]


def sectional_vertex(g: Graph, v, sample: int | None = None, seed: int = 0, metric: Metric | None = None) -> float:
    """Mean sectional curvature over triples containing ``v``."""
    i = g.index(v)
    metric = metric or Metric(g)
    return _triples_mean(g, (i,), _component_pool(g, {i}), 2, sample, seed, metric)[0]


# -- Menger ----------------------------------------------------------------


def menger_triangle(a: float, b: float, c: float) -> float:
    """Reciprocal circumradius ``4 * area / (a b c)``; zero for degenerate triangles."""
    if min(a, b, c) <= 0:
        raise GraphError("side lengths must be positive")
    a, b, c = sorted((a, b, c), reverse=True)
    slack = c - (a - b)
    if slack < -TRIANGLE_TOL * a:
        raise GraphError(f"sides {(a, b, c)} violate the triangle inequality")
    # Kahan's stable Heron product, a >= b >= c
    prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if prod <= 0:
        return 0.0
    return math.sqrt(prod) / (a * b * c)


def triangles_at(g: Graph, u, v) -> list[int]:
    i, j = g.edge_key(u, v)
    return sorted(set(g.neighbors(i)) & set(g.neighbors(j)))


def menger_ricci(g: Graph, u, v) -> float:
    """Sum of Menger curvatures of the triangles through edge ``u-v`` (sides are edge weights)."""
    i, j = g.edge_key(u, v)
    w = g.weight(i, j)
    return sum(menger_triangle(w, g.weight(i, k), g.weight(j, k)) for k in triangles_at(g, i, j))


# -- Haantjes --------------------------------------------------------------


def haantjes_path(g: Graph, pi: Sequence, metric: Metric | None = None) -> float:
    """``sqrt((l - d) / d**3)`` for path length ``l`` and endpoint distance ``d``."""
    idx = [g.index(x) for x in pi]
    if len(idx) < 2 or idx[0] == idx[-1]:
        raise GraphError("path needs two distinct endpoints")
    length = 0.0
    for x, y in zip(idx, idx[1:]):
        if not g.has_edge(x, y):
            raise GraphError(f"{g.label(x)}-{g.label(y)} is not an edge")
        length += g.weight(x, y)
    d = (metric or Metric(g))(idx[0], idx[-1])
    return math.sqrt(max(length - d, 0.0) / d**3)


def simple_paths(g: Graph, s: int, t: int, max_hops: int, min_hops: int = 1):
    """Yield simple paths ``s -> t`` with hop count in ``[min_hops, max_hops]``."""
    path = [s]
    on_path = {s}

    def walk(x):
        if len(path) - 1 >= max_hops:
            return
        for y in g.neighbors(x):
            if y in on_path:
                continue
            path.append(y)
            if y == t:
                if len(path) - 1 >= min_hops:
                    yield list(path)
            else:
                on_path.add(y)
                yield from walk(y)
                on_path.discard(y)
            path.pop()

    yield from walk(s)


def haantjes_ricci(g: Graph, u, v, max_len: int = DEFAULT_MAX_LEN, metric: Metric | None = None) -> float:
    """Sum of path curvatures over simple ``u-v`` paths of 2 to ``max_len`` hops."""
    if max_len < 2:
        raise GraphError("max_len must be at least 2")
    if max_len > MAX_LEN_CAP:
        raise GraphError(f"max_len above {MAX_LEN_CAP} is not supported")
    i, j = g.edge_key(u, v)
    metric = metric or Metric(g)
    return sum(haantjes_path(g, p, metric) for p in simple_paths(g, i, j, max_len, min_hops=2))


# -- reports ---------------------------------------------------------------


def menger_report(g: Graph) -> CurvatureReport:
    return CurvatureReport("menger", "edge", {}, {g.edge_label(e): menger_ricci(g, *e) for e in g.edges})


def haantjes_report(g: Graph, max_len: int = DEFAULT_MAX_LEN) -> CurvatureReport:
    metric = Metric(g)
    vals = pmap(lambda e: haantjes_ricci(g, *e, max_len=max_len, metric=metric), g.edges)
    return CurvatureReport("haantjes", "edge", {"max_len": max_len}, {g.edge_label(e): k for e, k in zip(g.edges, vals)})


def _has_triple(g: Graph, comp: list[int], members: tuple[int, ...]) -> bool:
    return sum(1 for x in comp if x == comp[members[0]]) >= 3


def sectional_edge_report(g: Graph, sample: int | None = None, seed: int = 0) -> CurvatureReport:
    metric = Metric(g)
    comp = g.components()
    edges = [e for e in g.edges if _has_triple(g, comp, e)]
    vals = pmap(lambda e: sectional_edge(g, *e, sample=sample, seed=seed, metric=metric), edges)
    params = {"sample": sample if sample is not None else "auto", "seed": seed}
    return CurvatureReport("sectional", "edge", params, {g.edge_label(e): k for e, k in zip(edges, vals)})


def sectional_vertex_report(g: Graph, sample: int | None = None, seed: int = 0) -> CurvatureReport:
    metric = Metric(g)
    comp = g.components()
    verts = [i for i in range(g.n) if _has_triple(g, comp, (i,))]
    vals = pmap(lambda i: sectional_vertex(g, i, sample=sample, seed=seed, metric=metric), verts)
    params = {"sample": sample if sample is not None else "auto", "seed": seed}
    return CurvatureReport("sectional", "vertex", params, {g.label(i): k for i, k in zip(verts, vals)})
