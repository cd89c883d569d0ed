"""Forman-Ricci curvature (graphs and simplicial complexes) and Ollivier-Ricci curvature."""

from __future__ import annotations

import math

from .complex import SimplicialComplex, incidence
from .graph import Graph, GraphError, Metric
from .report import CurvatureReport, pmap
from .transport import lazy_measure, wasserstein1

DEFAULT_ALPHA = 0.5


def forman_edge(g: Graph, u, v) -> float:
    """Weighted Forman-Ricci curvature of edge ``u-v``.

    The parallel-edge penalty is summed separately over the other edges at
    each endpoint; with unit weights this is ``4 - deg(u) - deg(v)``.
    """
    i, j = g.edge_key(u, v)
    we = g.weight(i, j)
    total = 0.0
    for x in (i, j):
        wx = g.vertex_weight[x]
        total += wx / we
        for y in g.neighbors(x):
            if y not in (i, j):
                total -= wx / math.sqrt(we * g.weight(x, y))
    return we * total


def forman_simplex(K: SimplicialComplex, sigma, weighted: bool = False) -> float:
    """Forman curvature of a simplex in ``K``.

    Unweighted: ``#faces + #cofaces - #parallel`` in any dimension.
    Weighted mode only exists for edges.
    """
    s = K.simplex(sigma)
    faces, cofaces, parallel = incidence(K, s)
    if not weighted:
        return float(len(faces) + len(cofaces) - len(parallel))
    if len(s) != 2:
        raise GraphError("weighted Forman curvature is defined for edges only")
    we = K.w(s)
    total = sum(we / K.w(f) for f in cofaces) + sum(K.w(v) / we for v in faces)
    for t in parallel:
        root = math.sqrt(we * K.w(t))
        shared_tri = [c for c in cofaces if set(t) <= set(c)]
        shared_vtx = set(s) & set(t)
        total -= abs(sum(root / K.w(c) for c in shared_tri) - sum(K.w((x,)) / root for x in shared_vtx))
    return we * total


def ollivier_edge(g: Graph, u, v, alpha: float = DEFAULT_ALPHA, metric: Metric | None = None) -> float:
    """Ollivier-Ricci curvature ``1 - W1(m_u, m_v) / d(u, v)`` with alpha-lazy walks."""
    i, j = g.edge_key(u, v)
    d = metric if metric is not None else Metric(g)
    w1 = wasserstein1(lazy_measure(g, i, alpha), lazy_measure(g, j, alpha), d)
    return 1.0 - w1 / d(i, j)


# -- whole-structure reports ----------------------------------------------


def forman_report(g: Graph) -> CurvatureReport:
    vals = pmap(lambda e: forman_edge(g, *e), g.edges)
    return CurvatureReport("forman", "edge", {}, {g.edge_label(e): k for e, k in zip(g.edges, vals)})


def forman_complex_report(K: SimplicialComplex, dim: int = 1, weighted: bool = False) -> CurvatureReport:
    simplices = K.simplices(dim)
    vals = pmap(lambda s: forman_simplex(K, s, weighted), simplices)
    return CurvatureReport(
        "forman-simplicial",
        "simplex",
        {"dim": dim, "weighted": weighted, "max_dim": K.max_dim},
        {K.label_of(s): k for s, k in zip(simplices, vals)},
    )


def ollivier_report(g: Graph, alpha: float = DEFAULT_ALPHA, hop: bool = False) -> CurvatureReport:
    metric = Metric(g, hop=hop)
    vals = pmap(lambda e: ollivier_edge(g, *e, alpha=alpha, metric=metric), g.edges)
    params = {"alpha": alpha, "metric": "hop" if hop else "weighted"}
    return CurvatureReport("ollivier", "edge", params, {g.edge_label(e): k for e, k in zip(g.edges, vals)})
