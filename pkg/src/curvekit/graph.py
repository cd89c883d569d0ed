"""Weighted undirected graphs, shortest-path metrics and point-cloud graphs."""

from __future__ import annotations

import math
from collections import deque
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.spatial.distance import pdist, squareform

DENSE_LIMIT = 2048


class GraphError(ValueError):
    """Raised for malformed graph input or invariant violations."""


def _key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


class Graph:
    """Immutable weighted undirected simple graph.

    Vertices carry string labels mapped to dense indices ``0..n-1`` in
    insertion order. Every public curvature routine accepts either a label
    or an ``int`` index wherever a vertex is expected.
    """

    def __init__(
        self,
        vertices: Sequence[Hashable],
        edges: Iterable[tuple] = (),
        vertex_weight: dict | None = None,
    ):
        self.labels: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("duplicate vertex label")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        n = len(self.labels)
        self.vertex_weight = np.ones(n)
        for v, w in (vertex_weight or {}).items():
            if not w > 0:
                raise GraphError(f"nonpositive vertex weight {w!r} at {v!r}")
            self.vertex_weight[self.index(v)] = float(w)
        self._adj: list[dict[int, float]] = [dict() for _ in range(n)]
        self._w: dict[tuple[int, int], float] = {}
        for e in edges:
            u, v = e[0], e[1]
            w = float(e[2]) if len(e) > 2 else 1.0
            i, j = self.index(u), self.index(v)
            if i == j:
                raise GraphError(f"self-loop at {self.labels[i]!r}")
            if not (w > 0 and math.isfinite(w)):
                raise GraphError(f"nonpositive weight {w!r} on {self.labels[i]}-{self.labels[j]}")
            k = _key(i, j)
            if k in self._w:
                raise GraphError(f"duplicate edge {self.labels[k[0]]}-{self.labels[k[1]]}")
            self._w[k] = w
            self._adj[i][j] = w
            self._adj[j][i] = w
        self._edges = tuple(sorted(self._w))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Sequence[Hashable] = ()) -> "Graph":
        """Build a graph from ``(u, v[, w])`` tuples; vertices appear in first-seen order."""
        edges = list(edges)
        order = dict.fromkeys(str(v) for v in vertices)
        for e in edges:
            order.setdefault(str(e[0]))
            order.setdefault(str(e[1]))
        return cls(list(order), [(str(e[0]), str(e[1]), *e[2:]) for e in edges])

    # -- vertex access -----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"

    def index(self, v) -> int:
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if not 0 <= v < self.n:
                raise GraphError(f"vertex index {v} out of range")
            return int(v)
        try:
            return self._index[str(v)]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def neighbors(self, v) -> list[int]:
        return sorted(self._adj[self.index(v)])

    def degree(self, v) -> int:
        return len(self._adj[self.index(v)])

    def weighted_degree(self, v) -> float:
        return sum(self._adj[self.index(v)].values())

    # -- edge access -------------------------------------------------------
    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted index pairs ``(i, j)`` with ``i < j``."""
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge_key(self, u, v) -> tuple[int, int]:
        k = _key(self.index(u), self.index(v))
        if k not in self._w:
            raise GraphError(f"no edge {self.labels[k[0]]}-{self.labels[k[1]]}")
        return k

    def has_edge(self, u, v) -> bool:
        return _key(self.index(u), self.index(v)) in self._w

    def weight(self, u, v) -> float:
        return self._w[self.edge_key(u, v)]

    def edge_label(self, e: tuple[int, int]) -> tuple[str, str]:
        return self.labels[e[0]], self.labels[e[1]]

    def is_unit_weighted(self) -> bool:
        return all(w == 1.0 for w in self._w.values())

    # -- derived graphs ----------------------------------------------------
    def with_weights(self, weights: dict[tuple[int, int], float]) -> "Graph":
        """Copy with edge weights replaced (keys are index pairs)."""
        new = [(self.labels[i], self.labels[j], weights.get((i, j), w)) for (i, j), w in self._w.items()]
        return Graph(self.labels, new, self._vertex_weight_dict())

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> "Graph":
        drop = {_key(*e) for e in drop}
        keep = [(self.labels[i], self.labels[j], w) for (i, j), w in self._w.items() if (i, j) not in drop]
        return Graph(self.labels, keep, self._vertex_weight_dict())

    def with_edges(self, extra: Iterable[tuple]) -> "Graph":
        new = [(self.labels[i], self.labels[j], w) for (i, j), w in self._w.items()]
        new += [(self.labels[self.index(e[0])], self.labels[self.index(e[1])], *e[2:]) for e in extra]
        return Graph(self.labels, new, self._vertex_weight_dict())

    def _vertex_weight_dict(self) -> dict[str, float]:
        return {lab: w for lab, w in zip(self.labels, self.vertex_weight) if w != 1.0}

    def adjacency(self, weighted: bool = True) -> csr_matrix:
        if not self._edges:
            return csr_matrix((self.n, self.n))
        rows, cols = np.array(self._edges).T
        data = np.array([self._w[e] for e in self._edges]) if weighted else np.ones(len(rows))
        a = csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return (a + a.T).tocsr()

    def components(self) -> list[int]:
        """Component id per vertex, ids numbered by smallest member index."""
        comp = [-1] * self.n
        c = 0
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = c
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if comp[y] < 0:
                        comp[y] = c
                        queue.append(y)
            c += 1
        return comp

    def is_connected(self) -> bool:
        return self.n == 0 or max(self.components()) == 0


# -- ingestion -------------------------------------------------------------


def load_graph(edge_list_text: str) -> Graph:
    """Parse whitespace-separated ``u v [w]`` lines; ``#`` starts a comment."""
    edges = []
    for lineno, raw in enumerate(edge_list_text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'u v [weight]', got {raw!r}")
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphError(f"line {lineno}: bad weight {parts[2]!r}") from None
        edges.append((parts[0], parts[1], w))
    return Graph.from_edges(edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


# -- metrics ---------------------------------------------------------------


def shortest_paths(g: Graph, hop: bool = False) -> np.ndarray:
    """Dense all-pairs shortest-path matrix; ``inf`` marks disconnected pairs.

    With ``hop=True`` every edge counts as length one.
    """
    if g.n == 0:
        return np.zeros((0, 0))
    return shortest_path(g.adjacency(weighted=not hop), method="D", directed=False)


def distances_from(g: Graph, sources: Sequence[int], hop: bool = False) -> np.ndarray:
    """Rows of the shortest-path matrix for the given source indices."""
    return shortest_path(g.adjacency(weighted=not hop), method="D", directed=False, indices=list(sources))


class Metric:
    """Lazily evaluated shortest-path metric.

    Graphs up to ``DENSE_LIMIT`` vertices get the full matrix up front;
    larger ones compute single-source rows on demand and cache them.
    """

    def __init__(self, g: Graph, hop: bool = False):
        self.g = g
        self.hop = hop
        self._dense = shortest_paths(g, hop) if g.n <= DENSE_LIMIT else None
        self._rows: dict[int, np.ndarray] = {}

    def row(self, i: int) -> np.ndarray:
        if self._dense is not None:
            return self._dense[i]
        if i not in self._rows:
            self._rows[i] = distances_from(self.g, [i], self.hop)[0]
        return self._rows[i]

    def __call__(self, i: int, j: int) -> float:
        return float(self.row(i)[j])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        if self._dense is not None:
            return self._dense[np.ix_(rows, cols)]
        return np.array([self.row(i)[list(cols)] for i in rows])

    def matrix(self) -> np.ndarray:
        if self._dense is None:
            self._dense = shortest_paths(self.g, self.hop)
        return self._dense


def hop_distances(g: Graph, v, limit: int | None = None) -> dict[int, int]:
    """Breadth-first hop counts from ``v``, optionally truncated at ``limit``."""
    s = g.index(v)
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def punctured_two_ball(g: Graph, v) -> tuple[set[int], set[int], set[tuple[int, int]]]:
    """Spheres ``S1``, ``S2`` around ``v`` and the S1-S1 plus S1-S2 edges.

    Edges between two ``S2`` vertices and edges at ``v`` are left out.
    """
    hops = hop_distances(g, v, limit=2)
    s1 = {x for x, h in hops.items() if h == 1}
    s2 = {x for x, h in hops.items() if h == 2}
    edges = set()
    for x in s1:
        for y in g.neighbors(x):
            if y in s1 or y in s2:
                edges.add(_key(x, y))
    return s1, s2, edges


# -- point clouds ----------------------------------------------------------


def as_distance_matrix(points, distance_matrix: bool = False) -> np.ndarray:
    """Pairwise Euclidean distances of a point array, or a validated square matrix."""
    arr = np.asarray(points, dtype=float)
    if distance_matrix:
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise GraphError("distance matrix must be square")
        if not np.allclose(arr, arr.T) or np.any(np.diag(arr) != 0) or np.any(arr < 0):
            raise GraphError("distance matrix must be symmetric, nonnegative, zero on the diagonal")
        return arr
    if arr.ndim == 1:
        arr = arr[:, None]
    if len(arr) < 2:
        return np.zeros((len(arr), len(arr)))
    return squareform(pdist(arr))


def epsilon_graph(points, eps: float, distance_matrix: bool = False) -> Graph:
    """Graph joining points at distance in ``(0, eps]``, weighted by that distance."""
    if not eps > 0:
        raise GraphError("eps must be positive")
    d = as_distance_matrix(points, distance_matrix)
    n = len(d)
    iu, ju = np.triu_indices(n, 1)
    mask = (d[iu, ju] > 0) & (d[iu, ju] <= eps)
    return Graph(range(n), [(str(i), str(j), d[i, j]) for i, j in zip(iu[mask], ju[mask])])
