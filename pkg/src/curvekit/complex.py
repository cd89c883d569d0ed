"""Simplicial complexes: clique and Vietoris-Rips construction, incidence queries."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .graph import Graph, GraphError, epsilon_graph

Simplex = tuple[int, ...]

MAX_DIM_CAP = 5


class SimplicialComplex:
    """Downward-closed family of simplices stored as sorted vertex tuples.

    ``labels`` names the vertices; simplices refer to them by index.
    Missing weights default to 1.
    """

    def __init__(self, labels: Iterable[str], simplices: Iterable[Iterable[int]], weights: dict | None = None):
        self.labels = tuple(str(x) for x in labels)
        closed: set[Simplex] = {(i,) for i in range(len(self.labels))}
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s:
                continue
            if s[0] < 0 or s[-1] >= len(self.labels):
                raise GraphError(f"simplex {s} references unknown vertex")
            if s in closed:
                continue
            for k in range(1, len(s) + 1):
                closed.update(combinations(s, k))
        self.max_dim = max((len(s) - 1 for s in closed), default=-1)
        self._by_dim: list[list[Simplex]] = [[] for _ in range(self.max_dim + 1)]
        for s in sorted(closed):
            self._by_dim[len(s) - 1].append(s)
        self._members = closed
        self._cofaces: dict[Simplex, list[Simplex]] = {s: [] for s in closed}
        for s in closed:
            if len(s) > 1:
                for f in combinations(s, len(s) - 1):
                    self._cofaces[f].append(s)
        for lst in self._cofaces.values():
            lst.sort()
        self.weight: dict[Simplex, float] = {}
        for s, w in (weights or {}).items():
            s = tuple(sorted(s))
            if s not in closed:
                raise GraphError(f"weight given for absent simplex {s}")
            if not w > 0:
                raise GraphError(f"nonpositive weight {w!r} on simplex {s}")
            self.weight[s] = float(w)

    @classmethod
    def from_labeled(cls, simplices: Iterable[Iterable], weights: dict | None = None) -> "SimplicialComplex":
        """Close a list of labeled simplices; vertex order is first appearance."""
        simplices = [list(map(str, s)) for s in simplices]
        order = dict.fromkeys(v for s in simplices for v in s)
        idx = {v: i for i, v in enumerate(order)}
        w = {tuple(sorted(idx[str(v)] for v in s)): x for s, x in (weights or {}).items()}
        return cls(order, [[idx[v] for v in s] for s in simplices], w)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __repr__(self) -> str:
        return f"SimplicialComplex(counts={self.counts()})"

    def simplices(self, dim: int | None = None) -> list[Simplex]:
        if dim is None:
            return [s for layer in self._by_dim for s in layer]
        if dim < 0 or dim > self.max_dim:
            return []
        return list(self._by_dim[dim])

    def counts(self) -> list[int]:
        return [len(layer) for layer in self._by_dim]

    def w(self, s: Simplex) -> float:
        return self.weight.get(s, 1.0)

    def simplex(self, vertices: Iterable) -> Simplex:
        """Canonical tuple for a simplex given by labels or indices."""
        idx = {lab: i for i, lab in enumerate(self.labels)}
        out = []
        for v in vertices:
            if isinstance(v, int) and not isinstance(v, bool):
                out.append(v)
            elif str(v) in idx:
                out.append(idx[str(v)])
            else:
                raise GraphError(f"unknown vertex {v!r}")
        s = tuple(sorted(out))
        if s not in self._members:
            raise GraphError(f"simplex {self.label_of(s)} not in complex")
        return s

    def label_of(self, s: Simplex) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in s)

    def faces(self, s: Simplex) -> list[Simplex]:
        if len(s) == 1:
            return []
        return sorted(combinations(s, len(s) - 1))

    def cofaces(self, s: Simplex) -> list[Simplex]:
        return list(self._cofaces[s])


def incidence(K: SimplicialComplex, sigma) -> tuple[set, set, set]:
    """Faces, cofaces and parallel neighbours of ``sigma``.

    Two simplices of equal dimension are parallel when they share a face or
    share a coface, but not both.
    """
    s = K.simplex(sigma)
    faces = set(K.faces(s))
    cofaces = set(K.cofaces(s))
    via_face = {t for f in faces for t in K.cofaces(f)} - {s}
    via_coface = {t for c in cofaces for t in K.faces(c)} - {s}
    return faces, cofaces, via_face ^ via_coface


def _cliques(g: Graph, max_size: int) -> list[Simplex]:
    """All cliques with at most ``max_size`` vertices, as sorted tuples."""
    nbrs = [set(g.neighbors(i)) for i in range(g.n)]
    out: list[Simplex] = []

    def extend(clique: tuple[int, ...], cand: set[int]) -> None:
        out.append(clique)
        if len(clique) == max_size:
            return
        for v in sorted(cand):
            extend(clique + (v,), {u for u in cand & nbrs[v] if u > v})

    for v in range(g.n):
        extend((v,), {u for u in nbrs[v] if u > v})
    return out


def clique_complex(g: Graph, max_dim: int = 2) -> SimplicialComplex:
    """Clique complex truncated at ``max_dim``; vertex and edge weights come from ``g``."""
    if max_dim < 1:
        raise GraphError("max_dim must be at least 1")
    if max_dim > MAX_DIM_CAP:
        raise GraphError(f"max_dim above {MAX_DIM_CAP} is not supported")
    weights = {(i,): float(w) for i, w in enumerate(g.vertex_weight) if w != 1.0}
    weights.update({e: g.weight(*e) for e in g.edges if g.weight(*e) != 1.0})
    return SimplicialComplex(g.labels, _cliques(g, max_dim + 1), weights)


def vietoris_rips(points, eps: float, max_dim: int = 2, distance_matrix: bool = False) -> SimplicialComplex:
    """Vietoris-Rips complex at scale ``eps``: simplices of diameter at most ``eps``."""
    return clique_complex(epsilon_graph(points, eps, distance_matrix), max_dim)


def load_simplex_weights(K: SimplicialComplex, text: str) -> SimplicialComplex:
    """Return ``K`` with weights overridden by lines ``v1 ... vk w``."""
    weights = dict(K.weight)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise GraphError(f"line {lineno}: expected 'v1 ... vk weight'")
        try:
            w = float(parts[-1])
        except ValueError:
            raise GraphError(f"line {lineno}: bad weight {parts[-1]!r}") from None
        weights[K.simplex(parts[:-1])] = w
    return SimplicialComplex(K.labels, K.simplices(), weights)
