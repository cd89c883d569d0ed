"""Graph factories and independent oracles shared by the test modules.

Oracles here deliberately avoid the code paths they check: Floyd-Warshall
instead of Dijkstra, a dense LP instead of the transportation simplex,
spanning-tree enumeration instead of Laplacian solves, subset scans instead
of coface maps.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import linprog

from curvekit.complex import SimplicialComplex
from curvekit.graph import Graph


# -- factories -------------------------------------------------------------


def path(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], vertices=range(n))


def cycle(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations(range(n), 2), vertices=range(n))


def star(leaves: int) -> Graph:
    return Graph.from_edges([("c", f"l{i}") for i in range(1, leaves + 1)])


def barbell(k: int) -> Graph:
    """Two ``K_k`` on ``a*`` and ``b*`` joined by the bridge ``a0-b0``."""
    edges = [(f"a{i}", f"a{j}") for i, j in itertools.combinations(range(k), 2)]
    edges += [(f"b{i}", f"b{j}") for i, j in itertools.combinations(range(k), 2)]
    edges.append(("a0", "b0"))
    return Graph.from_edges(edges)


def triangle_with_pendant() -> Graph:
    """Triangle x-y-z with pendant p hanging off z."""
    return Graph.from_edges([("x", "y"), ("y", "z"), ("x", "z"), ("z", "p")])


def random_graph(rng, n: int, p: float, weighted: bool = False) -> Graph:
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((i, j, float(rng.uniform(0.5, 3.0))) if weighted else (i, j))
    return Graph.from_edges(edges, vertices=range(n))


def random_connected(rng, n: int, p: float, weighted: bool = False) -> Graph:
    """Random spanning tree plus extra edges with probability ``p``."""
    edges = {}
    order = rng.permutation(n)
    for k in range(1, n):
        i, j = int(order[k]), int(order[rng.integers(k)])
        edges[(min(i, j), max(i, j))] = None
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges[(i, j)] = None
    out = [(i, j, float(rng.uniform(0.5, 3.0))) if weighted else (i, j) for i, j in edges]
    return Graph.from_edges(out, vertices=range(n))


def random_tree(rng, n: int) -> Graph:
    return random_connected(rng, n, 0.0)


def fig6_complex() -> SimplicialComplex:
    """Strip of five triangles f1..f5 with a two-tetrahedron bipyramid glued at each end.

    The bipyramids meet f1 and f5 along an edge of their shared triangle, so
    the end triangles see four parallel triangles and the middle ones two.
    Four tetrahedra, 5 + 14 triangles in total.
    """
    strip = [("s0", "s1", "s2"), ("s1", "s2", "s3"), ("s2", "s3", "s4"), ("s3", "s4", "s5"), ("s4", "s5", "s6")]
    tets = [
        ("s0", "s1", "a", "p"),
        ("s0", "s1", "a", "q"),
        ("s5", "s6", "b", "r"),
        ("s5", "s6", "b", "t"),
    ]
    return SimplicialComplex.from_labeled(strip + tets)


FIG6_LABELS = {
    "f1": ("s0", "s1", "s2"),
    "f2": ("s1", "s2", "s3"),
    "f3": ("s2", "s3", "s4"),
    "f4": ("s3", "s4", "s5"),
    "f5": ("s4", "s5", "s6"),
}


# -- oracles ---------------------------------------------------------------


def floyd_warshall(g: Graph) -> np.ndarray:
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for i, j in g.edges:
        d[i, j] = d[j, i] = g.weight(i, j)
    for k in range(g.n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def bfs_hops(g: Graph) -> np.ndarray:
    d = np.full((g.n, g.n), np.inf)
    for s in range(g.n):
        d[s, s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if d[s, y] == np.inf:
                        d[s, y] = d[s, x] + 1
                        nxt.append(y)
            frontier = nxt
    return d


def lp_wasserstein(mu: dict, nu: dict, d: np.ndarray) -> float:
    """Dense LP over the full vertex set, no support restriction."""
    n = len(d)
    a = np.array([mu.get(i, 0.0) for i in range(n)])
    b = np.array([nu.get(i, 0.0) for i in range(n)])
    a_eq = np.zeros((2 * n, n * n))
    for i in range(n):
        a_eq[i, i * n : (i + 1) * n] = 1.0
        a_eq[n + i, i::n] = 1.0
    cost = np.where(np.isfinite(d), d, 1e9).ravel()
    res = linprog(cost, A_eq=a_eq, b_eq=np.concatenate([a, b]), bounds=(0, None), method="highs")
    assert res.status == 0
    return float(res.fun)


def basic_solution_wasserstein(a, b, cost) -> float:
    """Minimum over every basic feasible solution of a small transportation LP.

    Bases are the spanning trees of the bipartite row/column graph, grown
    cell by cell; each tree fixes a unique plan by peeling leaves, and the
    optimum is the cheapest nonnegative one.
    """
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    cost = np.asarray(cost, float)
    m, n = len(a), len(b)
    cells = [(i, j) for i in range(m) for j in range(n)]
    need = m + n - 1
    best = [math.inf]

    def peel(basis):
        ra, rb = a[:], b[:]
        left = list(basis)
        total = 0.0
        while left:
            rows, cols = {}, {}
            for i, j in left:
                rows[i] = rows.get(i, 0) + 1
                cols[j] = cols.get(j, 0) + 1
            k, (i, j) = next((k, c) for k, c in enumerate(left) if rows[c[0]] == 1 or cols[c[1]] == 1)
            x = ra[i] if rows[i] == 1 else rb[j]
            if x < -1e-12:
                return
            ra[i] -= x
            rb[j] -= x
            total += x * cost[i, j]
            left.pop(k)
        best[0] = min(best[0], total)

    def grow(start, chosen, comp):
        if len(chosen) == need:
            peel(chosen)
            return
        for k in range(start, len(cells) - (need - len(chosen)) + 1):
            i, j = cells[k]
            ci, cj = comp[i], comp[m + j]
            if ci != cj:
                grow(k + 1, chosen + [(i, j)], [ci if c == cj else c for c in comp])

    grow(0, [], list(range(m + n)))
    return best[0]


def spanning_tree_inclusion(g: Graph) -> dict[tuple[int, int], float]:
    """Weighted probability each edge lies in a random spanning tree (full enumeration)."""
    edges = list(g.edges)
    total = 0.0
    hits = dict.fromkeys(edges, 0.0)
    for subset in itertools.combinations(edges, g.n - 1):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for i, j in subset:
            ri, rj = find(i), find(j)
            if ri == rj:
                ok = False
                break
            parent[ri] = rj
        if not ok:
            continue
        w = math.prod(g.weight(*e) for e in subset)
        total += w
        for e in subset:
            hits[e] += w
    return {e: h / total for e, h in hits.items()}


def brute_incidence(simplices: list[tuple], sigma: tuple):
    """Face/coface/parallel counts from raw subset tests on the simplex list."""
    s = set(sigma)
    p = len(sigma)
    same = [t for t in simplices if len(t) == p and set(t) != s]
    faces = [t for t in simplices if len(t) == p - 1 and set(t) < s]
    cofaces = [t for t in simplices if len(t) == p + 1 and s < set(t)]
    parallel = []
    for t in same:
        share_face = any(set(f) < s and set(f) < set(t) for f in simplices if len(f) == p - 1)
        share_coface = any(s < set(c) and set(t) < set(c) for c in simplices if len(c) == p + 1)
        if share_face != share_coface:
            parallel.append(t)
    return len(faces), len(cofaces), len(parallel)


def brute_sectional(d: np.ndarray, t) -> float:
    """Expansion constant of a triple by scanning radius multipliers over candidate breakpoints."""
    a, b, c = t
    r = [0.5 * (d[a, b] + d[a, c] - d[b, c]), 0.5 * (d[a, b] + d[b, c] - d[a, c]), 0.5 * (d[a, c] + d[b, c] - d[a, b])]
    best = math.inf
    for x in range(len(d)):
        worst = 0.0
        for v, ri in zip(t, r):
            dist = d[v, x]
            if ri == 0:
                q = 0.0 if dist == 0 else math.inf
            else:
                q = dist / ri
            worst = max(worst, q)
        best = min(best, worst)
    return best


def centered_basis(n: int) -> np.ndarray:
    q, _ = np.linalg.qr(np.eye(n) - 1.0 / n)
    return q[:, : n - 1]


def bakry_emery_bisection(gamma: np.ndarray, gamma2: np.ndarray, lo=-50.0, hi=50.0, tol=1e-9) -> float:
    """Largest ``K`` with ``Gamma_2 - K Gamma`` PSD on functions orthogonal to constants."""
    p = centered_basis(len(gamma))
    g1, g2 = p.T @ gamma @ p, p.T @ gamma2 @ p

    def feasible(k):
        return np.linalg.eigvalsh(g2 - k * g1).min() >= -1e-10

    if not feasible(lo):
        return -math.inf
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if feasible(mid) else (lo, mid)
    return lo


def brute_gamma_forms(g: Graph, v: int):
    """Gamma and Gamma_2 matrices by polarising the operator definitions on basis functions."""
    from curvekit.graph import hop_distances

    hops = hop_distances(g, v, limit=2)
    ball = sorted(hops, key=lambda x: (hops[x], x))
    pos = {x: k for k, x in enumerate(ball)}
    n = len(ball)

    def lap(f, x):
        return sum(f[pos[y]] - f[pos[x]] for y in g.neighbors(x))

    def gam(f, h, x):
        return 0.5 * sum((f[pos[y]] - f[pos[x]]) * (h[pos[y]] - h[pos[x]]) for y in g.neighbors(x))

    def lapvec(f):
        # Laplacian is only needed on B_1(v); elsewhere it would leave the ball
        out = np.zeros(n)
        for x in [v, *g.neighbors(v)]:
            out[pos[x]] = lap(f, x)
        return out

    def gamma2(f):
        gf = {x: gam(f, f, x) for x in [v, *g.neighbors(v)]}
        lgam = sum(gf[y] - gf[v] for y in g.neighbors(v))
        return 0.5 * lgam - gam(f, lapvec(f), v)

    eye = np.eye(n)
    q1 = np.array([[gam(eye[i], eye[j], v) for j in range(n)] for i in range(n)])
    q2 = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            q2[i, j] = 0.25 * (gamma2(eye[i] + eye[j]) - gamma2(eye[i] - eye[j]))
    return q1, q2


def bridges(g: Graph) -> set[tuple[int, int]]:
    """Edges whose removal disconnects their endpoints (removal test)."""
    out = set()
    for e in g.edges:
        h = g.without_edges([e])
        comp = h.components()
        if comp[e[0]] != comp[e[1]]:
            out.add(e)
    return out
