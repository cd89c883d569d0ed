"""Discrete Ricci flow, surgery, and negative-curvature edge deletion."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .edge_curvature import DEFAULT_ALPHA, ollivier_edge
from .graph import Graph, Metric, hop_distances
from .report import pmap

FLOOR_FACTOR = 1e-6
TIE_TOL = 1e-12


@dataclass
class FlowState:
    """Edge weights after ``iteration`` flow steps and the curvature seen at each step."""

    graph: Graph
    iteration: int = 0
    floor: float = 0.0
    curvature_history: list[dict[tuple[int, int], float]] = field(default_factory=list)
    weight_history: list[dict[tuple[int, int], float]] = field(default_factory=list)
    metric: Metric | None = None

    @classmethod
    def start(cls, g: Graph) -> "FlowState":
        mean = float(np.mean([g.weight(*e) for e in g.edges])) if g.m else 1.0
        return cls(graph=g, floor=FLOOR_FACTOR * mean, metric=Metric(g))

    @property
    def weights(self) -> dict[tuple[int, int], float]:
        return {e: self.graph.weight(*e) for e in self.graph.edges}


@dataclass
class CommunityAssignment:
    labels: dict[str, int]
    method: dict
    removed: list[tuple[str, str]] = field(default_factory=list)

    def communities(self) -> list[list[str]]:
        groups: dict[int, list[str]] = {}
        for v, c in self.labels.items():
            groups.setdefault(c, []).append(v)
        return [groups[c] for c in sorted(groups)]

    @property
    def count(self) -> int:
        return len(set(self.labels.values()))


def _component_labels(g: Graph) -> dict[str, int]:
    return {g.label(i): c for i, c in enumerate(g.components())}


def ricci_flow_step(state: FlowState, alpha: float = DEFAULT_ALPHA) -> FlowState:
    """One update ``w <- d (1 - kappa)`` on every edge, floored at ``state.floor``."""
    g = state.graph
    metric = state.metric or Metric(g)
    kappa = dict(zip(g.edges, pmap(lambda e: ollivier_edge(g, *e, alpha=alpha, metric=metric), g.edges)))
    new = {e: max(metric(*e) * (1.0 - kappa[e]), state.floor) for e in g.edges}
    g2 = g.with_weights(new)
    return FlowState(
        graph=g2,
        iteration=state.iteration + 1,
        floor=state.floor,
        curvature_history=state.curvature_history + [kappa],
        weight_history=state.weight_history + [new],
        metric=Metric(g2),
    )


def ricci_flow(g: Graph, iters: int = 20, alpha: float = DEFAULT_ALPHA) -> FlowState:
    if iters < 1:
        raise ValueError("iters must be at least 1")
    state = FlowState.start(g)
    for _ in range(iters):
        state = ricci_flow_step(state, alpha)
    return state


def surgery(state: FlowState | Graph, threshold: float) -> CommunityAssignment:
    """Cut edges heavier than ``threshold``; remaining components are the communities."""
    g = state.graph if isinstance(state, FlowState) else state
    heavy = [e for e in g.edges if g.weight(*e) > threshold]
    return CommunityAssignment(_component_labels(g.without_edges(heavy)), {"method": "ricci-flow", "threshold": threshold})


def threshold_sweep(state: FlowState, thresholds=None) -> list[tuple[float, int]]:
    """Community count per cutoff; defaults to every distinct edge weight."""
    g = state.graph
    if thresholds is None:
        thresholds = sorted({g.weight(*e) for e in g.edges})
    return [(float(t), surgery(state, t).count) for t in thresholds]


def delete_negative_communities(g: Graph, alpha: float = DEFAULT_ALPHA, recompute_radius: int | None = 2) -> CommunityAssignment:
    """Remove the most negatively curved edge until none is negative.

    After each removal only edges with an endpoint within ``recompute_radius``
    hops of the removed edge are re-evaluated; ``None`` re-evaluates all.
    Ties go to the smallest index pair.
    """
    kappa: dict[tuple[int, int], float] = {}
    metric = Metric(g)
    for e in g.edges:
        kappa[e] = ollivier_edge(g, *e, alpha=alpha, metric=metric)
    removed = []
    while kappa:
        low = min(kappa.values())
        if low >= 0:
            break
        worst = min(e for e, k in kappa.items() if k <= low + TIE_TOL)
        removed.append(worst)
        touched = set()
        if recompute_radius is not None:
            for end in worst:
                touched.update(hop_distances(g, end, limit=recompute_radius))
        g = g.without_edges([worst])
        del kappa[worst]
        metric = Metric(g)
        for e in list(kappa):
            if recompute_radius is None or e[0] in touched or e[1] in touched:
                kappa[e] = ollivier_edge(g, *e, alpha=alpha, metric=metric)
    method = {
        "method": "negative-deletion",
        "alpha": alpha,
        "recompute_radius": "exact" if recompute_radius is None else recompute_radius,
        "removed": len(removed),
    }
    return CommunityAssignment(_component_labels(g), method, [g.edge_label(e) for e in removed])
