"""Discrete measures on vertices and an exact Wasserstein-1 solver.

The solver is a primal transportation simplex: a north-west-corner basis,
node potentials from the basis tree, Bland's rule for entering and leaving
cells. Supports are small (a closed neighbourhood each), so every problem
is solved to optimality rather than approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError

MASS_TOL = 1e-9
REDUCED_COST_TOL = 1e-12


class TransportError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteMeasure:
    """Probability mass on vertex indices (zero masses are dropped)."""

    support: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if any(m < 0 for m in self.support.values()):
            raise TransportError("negative mass")
        total = sum(self.support.values())
        if abs(total - 1.0) > MASS_TOL:
            raise TransportError(f"masses sum to {total!r}, not 1")
        object.__setattr__(self, "support", {k: float(v) for k, v in sorted(self.support.items()) if v > 0})

    def __getitem__(self, v: int) -> float:
        return self.support.get(v, 0.0)

    def points(self) -> list[int]:
        return list(self.support)

    def masses(self) -> np.ndarray:
        return np.fromiter(self.support.values(), float, len(self.support))


def lazy_measure(g: Graph, v, alpha: float = 0.5) -> DiscreteMeasure:
    """Keep ``alpha`` at ``v``, spread ``1 - alpha`` evenly over its neighbours."""
    if not 0.0 <= alpha <= 1.0:
        raise TransportError(f"alpha must lie in [0, 1], got {alpha!r}")
    i = g.index(v)
    nbrs = g.neighbors(i)
    if not nbrs:
        raise GraphError(f"vertex {g.label(i)!r} is isolated")
    share = (1.0 - alpha) / len(nbrs)
    mass = {u: share for u in nbrs}
    mass[i] = alpha
    return DiscreteMeasure(mass)


def transport_simplex(a: np.ndarray, b: np.ndarray, cost: np.ndarray) -> tuple[float, np.ndarray]:
    """Solve ``min <cost, P>`` over plans ``P >= 0`` with row sums ``a`` and column sums ``b``.

    Returns the optimal value and plan. ``a`` and ``b`` must be positive and
    carry equal totals; the smaller-total residue is absorbed by the last cell.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    cost = np.asarray(cost, float)
    m, n = len(a), len(b)
    if cost.shape != (m, n):
        raise TransportError("cost shape does not match marginals")
    if abs(a.sum() - b.sum()) > MASS_TOL:
        raise TransportError("marginals carry different total mass")
    if not np.all(np.isfinite(cost)):
        raise TransportError("infinite transport cost between support points")

    # North-west corner: m + n - 1 basic cells forming a staircase tree.
    plan = np.zeros((m, n))
    basis: set[tuple[int, int]] = set()
    ra, rb = a.copy(), b.copy()
    i = j = 0
    while True:
        x = max(min(ra[i], rb[j]), 0.0)
        plan[i, j] = x
        basis.add((i, j))
        ra[i] -= x
        rb[j] -= x
        if i == m - 1 and j == n - 1:
            break
        if j == n - 1 or (i < m - 1 and ra[i] <= rb[j]):
            i += 1
        else:
            j += 1

    while True:
        u, v = _potentials(basis, cost, m, n)
        entering = None
        reduced = cost - u[:, None] - v[None, :]
        for p in range(m):
            for q in range(n):
                if (p, q) not in basis and reduced[p, q] < -REDUCED_COST_TOL:
                    entering = (p, q)
                    break
            if entering:
                break
        if entering is None:
            break
        cycle = _cycle(basis, entering, m, n)
        minus = cycle[1::2]
        theta = min(plan[c] for c in minus)
        leaving = min(c for c in minus if plan[c] == theta)
        for k, c in enumerate(cycle):
            plan[c] += theta if k % 2 == 0 else -theta
        plan[leaving] = 0.0
        basis.remove(leaving)
        basis.add(entering)
    np.maximum(plan, 0.0, out=plan)
    return float((plan * cost).sum()), plan


def _potentials(basis, cost, m, n):
    # rows are nodes 0..m-1, columns m..m+n-1; the basis is a spanning tree
    adj: list[list[int]] = [[] for _ in range(m + n)]
    for i, j in basis:
        adj[i].append(m + j)
        adj[m + j].append(i)
    pot = [math.nan] * (m + n)
    pot[0] = 0.0
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if math.isnan(pot[y]):
                c = cost[x, y - m] if x < m else cost[y, x - m]
                pot[y] = c - pot[x]
                stack.append(y)
    return np.array(pot[:m]), np.array(pot[m:])


def _cycle(basis, entering, m, n):
    """Cells of the pivot cycle, starting at ``entering`` and alternating sign."""
    adj: list[list[int]] = [[] for _ in range(m + n)]
    for i, j in basis:
        adj[i].append(m + j)
        adj[m + j].append(i)
    src, dst = m + entering[1], entering[0]
    parent = {src: None}
    stack = [src]
    while stack:
        x = stack.pop()
        if x == dst:
            break
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [dst]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    # path runs row(entering) -> ... -> column(entering)
    cells = [entering]
    for x, y in zip(path, path[1:]):
        cells.append((x, y - m) if x < m else (y, x - m))
    return cells


def wasserstein1(mu: DiscreteMeasure, nu: DiscreteMeasure, d) -> float:
    """Exact Wasserstein-1 distance between two measures under metric ``d``.

    ``d`` is a dense distance matrix or anything with a ``submatrix(rows, cols)``
    method (see :class:`curvekit.graph.Metric`).
    """
    rows, cols = mu.points(), nu.points()
    if hasattr(d, "submatrix"):
        cost = d.submatrix(rows, cols)
    else:
        cost = np.asarray(d)[np.ix_(rows, cols)]
    if not np.all(np.isfinite(cost)):
        raise TransportError("measures are supported on different components")
    if mu.support == nu.support:
        return 0.0
    value, _ = transport_simplex(mu.masses(), nu.masses(), cost)
    return max(value, 0.0)
