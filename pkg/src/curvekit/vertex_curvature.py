"""Vertex curvatures: Bakry-Emery, effective resistance, Ricci-to-scalar averages."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, null_space

from .edge_curvature import DEFAULT_ALPHA, ollivier_edge
from .graph import Graph, GraphError, Metric, punctured_two_ball
from .report import CurvatureReport, pmap

KERNEL_RTOL = 1e-10
PSD_TOL = 1e-9


@dataclass(frozen=True)
class QuadraticFormPair:
    """Matrices of ``Gamma(f)(v)`` and ``Gamma_2(f)(v)`` on functions over ``B_2(v)``.

    ``basis[0]`` is ``v`` itself, then ``S1`` and ``S2`` in index order.
    """

    basis: tuple[int, ...]
    gamma: np.ndarray
    gamma2: np.ndarray


def gamma_forms(g: Graph, v) -> QuadraticFormPair:
    """Assemble the curvature-dimension quadratic forms at ``v`` (unweighted Laplacian)."""
    c = g.index(v)
    s1, s2, _ = punctured_two_ball(g, c)
    basis = (c, *sorted(s1), *sorted(s2))
    pos = {x: k for k, x in enumerate(basis)}
    n = len(basis)
    eye = np.eye(n)

    def lap(x):
        row = np.zeros(n)
        for y in g.neighbors(x):
            row[pos[y]] += 1.0
            row[pos[x]] -= 1.0
        return row

    def gam(x):
        q = np.zeros((n, n))
        for y in g.neighbors(x):
            dv = eye[pos[y]] - eye[pos[x]]
            q += 0.5 * np.outer(dv, dv)
        return q

    gv = gam(c)
    lv = lap(c)
    lap_gamma = np.zeros((n, n))
    cross = np.zeros((n, n))
    for y in g.neighbors(c):
        lap_gamma += gam(y) - gv
        cross += 0.5 * np.outer(eye[pos[y]] - eye[pos[c]], lap(y) - lv)
    gamma2 = 0.5 * lap_gamma - 0.5 * (cross + cross.T)
    return QuadraticFormPair(basis, gv, 0.5 * (gamma2 + gamma2.T))


def _centered_basis(n: int) -> np.ndarray:
    return null_space(np.ones((1, n)))


def bakry_emery(g: Graph, v) -> float:
    """Largest ``K`` with ``Gamma_2(f)(v) >= K Gamma(f)(v)`` for every ``f`` (dimension infinity).

    Returns ``-inf`` when no finite ``K`` works.
    """
    c = g.index(v)
    if g.degree(c) == 0:
        raise GraphError(f"Bakry-Emery curvature undefined at isolated vertex {g.label(c)!r}")
    forms = gamma_forms(g, c)
    p = _centered_basis(len(forms.basis))
    a1 = p.T @ forms.gamma @ p
    a2 = p.T @ forms.gamma2 @ p
    evals, evecs = np.linalg.eigh(a1)
    keep = evals > KERNEL_RTOL * evals.max()
    rng, ker = evecs[:, keep], evecs[:, ~keep]
    d = evals[keep]
    a = rng.T @ a2 @ rng
    if ker.shape[1]:
        b = rng.T @ a2 @ ker
        cc = ker.T @ a2 @ ker
        ce, cv = np.linalg.eigh(cc)
        scale = max(1.0, np.abs(a2).max())
        if ce.min() < -PSD_TOL * scale:
            return -np.inf
        pos = ce > PSD_TOL * scale
        # cross terms into the null directions of Gamma_2|ker must vanish
        if (~pos).any() and np.abs(b @ cv[:, ~pos]).max() > 1e-7 * scale:
            return -np.inf
        cinv = (cv[:, pos] / ce[pos]) @ cv[:, pos].T
        a = a - b @ cinv @ b.T
    s = a / np.sqrt(np.outer(d, d))
    return float(np.linalg.eigvalsh(0.5 * (s + s.T)).min())


# -- effective resistance -------------------------------------------------


class Resistance:
    """Effective resistances via one grounded-Laplacian factorisation per component."""

    def __init__(self, g: Graph):
        self.g = g
        self.comp = g.components()
        self._inv: dict[int, tuple[list[int], np.ndarray]] = {}

    def _component(self, c: int):
        if c not in self._inv:
            members = [x for x in range(self.g.n) if self.comp[x] == c]
            pos = {x: k for k, x in enumerate(members)}
            k = len(members)
            lap = np.zeros((k, k))
            for i, j in self.g.edges:
                if self.comp[i] != c:
                    continue
                w = self.g.weight(i, j)
                a, b = pos[i], pos[j]
                lap[a, a] += w
                lap[b, b] += w
                lap[a, b] -= w
                lap[b, a] -= w
            inv = np.zeros((k, k))
            if k > 1:
                # ground the first member; its potential is zero
                fac = cho_factor(lap[1:, 1:])
                inv[1:, 1:] = cho_solve(fac, np.eye(k - 1))
            self._inv[c] = (pos, inv)
        return self._inv[c]

    def __call__(self, u, v) -> float:
        i, j = self.g.index(u), self.g.index(v)
        if self.comp[i] != self.comp[j]:
            raise GraphError(f"{self.g.label(i)!r} and {self.g.label(j)!r} lie in different components")
        pos, inv = self._component(self.comp[i])
        a, b = pos[i], pos[j]
        return float(inv[a, a] + inv[b, b] - 2.0 * inv[a, b])

    def relative(self, u, v) -> float:
        """``Omega_uv * w_uv``: probability the edge lies in a random spanning tree."""
        return self(u, v) * self.g.weight(u, v)


def effective_resistance(g: Graph, i, j) -> float:
    return Resistance(g)(i, j)


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise GraphError("resistance curvature needs a connected graph")


def resistance_vertex(g: Graph, v, res: Resistance | None = None) -> float:
    """``1 - 1/2 * sum`` of relative resistances over edges at ``v``."""
    _require_connected(g)
    res = res or Resistance(g)
    i = g.index(v)
    return 1.0 - 0.5 * sum(res.relative(i, j) for j in g.neighbors(i))


def resistance_edge(g: Graph, u, v, denominator: str = "resistance", res: Resistance | None = None) -> float:
    """Edge resistance curvature ``2 (p(u) + p(v)) / omega``.

    ``omega`` is the effective resistance of the edge by default, or the edge
    weight with ``denominator="weight"``.
    """
    _require_connected(g)
    res = res or Resistance(g)
    i, j = g.edge_key(u, v)
    if denominator == "resistance":
        omega = res(i, j)
    elif denominator == "weight":
        omega = g.weight(i, j)
    else:
        raise ValueError(f"unknown denominator {denominator!r}")
    return 2.0 * (resistance_vertex(g, i, res) + resistance_vertex(g, j, res)) / omega


# -- Ricci to scalar -------------------------------------------------------


def scalar_from_edges(g: Graph, v, edge_values: CurvatureReport | dict) -> float:
    """Mean of the edge curvatures over the edges at ``v``."""
    i = g.index(v)
    nbrs = g.neighbors(i)
    if not nbrs:
        raise GraphError(f"vertex {g.label(i)!r} is isolated")
    values = edge_values.values if isinstance(edge_values, CurvatureReport) else edge_values
    total = 0.0
    for j in nbrs:
        a, b = g.label(i), g.label(j)
        if (a, b) in values:
            total += values[(a, b)]
        elif (b, a) in values:
            total += values[(b, a)]
        else:
            raise KeyError(f"no curvature value for edge {a}-{b}")
    return total / len(nbrs)


def scalar_orc(g: Graph, v, alpha: float = DEFAULT_ALPHA, metric: Metric | None = None) -> float:
    """Squared-weight average of Ollivier-Ricci curvature over the edges at ``v``."""
    i = g.index(v)
    nbrs = g.neighbors(i)
    if not nbrs:
        raise GraphError(f"vertex {g.label(i)!r} is isolated")
    metric = metric or Metric(g)
    return sum(g.weight(i, j) ** 2 * ollivier_edge(g, i, j, alpha, metric) for j in nbrs) / len(nbrs)


# -- whole-graph reports ---------------------------------------------------


def bakry_emery_report(g: Graph) -> CurvatureReport:
    verts = [i for i in range(g.n) if g.degree(i)]
    vals = pmap(lambda i: bakry_emery(g, i), verts)
    return CurvatureReport("bakry-emery", "vertex", {"dimension": "inf"}, {g.label(i): k for i, k in zip(verts, vals)})


def resistance_vertex_report(g: Graph) -> CurvatureReport:
    res = Resistance(g)
    _require_connected(g)
    return CurvatureReport("resistance", "vertex", {}, {g.label(i): resistance_vertex(g, i, res) for i in range(g.n)})


def resistance_edge_report(g: Graph, denominator: str = "resistance") -> CurvatureReport:
    res = Resistance(g)
    _require_connected(g)
    vals = {g.edge_label(e): resistance_edge(g, *e, denominator=denominator, res=res) for e in g.edges}
    return CurvatureReport("resistance-edge", "edge", {"denominator": denominator}, vals)


def scalar_report(g: Graph, edge_report: CurvatureReport) -> CurvatureReport:
    vals = {g.label(i): scalar_from_edges(g, i, edge_report) for i in range(g.n) if g.degree(i)}
    return CurvatureReport(f"{edge_report.model}-scalar", "vertex", dict(edge_report.params), vals)


def scalar_orc_report(g: Graph, alpha: float = DEFAULT_ALPHA) -> CurvatureReport:
    metric = Metric(g)
    vals = {g.label(i): scalar_orc(g, i, alpha, metric) for i in range(g.n) if g.degree(i)}
    return CurvatureReport("scalar-ollivier", "vertex", {"alpha": alpha}, vals)
