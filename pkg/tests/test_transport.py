import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvekit.graph import Metric, shortest_paths
from curvekit.transport import (
    DiscreteMeasure,
    TransportError,
    lazy_measure,
    transport_simplex,
    wasserstein1,
)

from helpers import (
    basic_solution_wasserstein,
    complete,
    lp_wasserstein,
    path,
    random_connected,
    random_graph,
)


def test_lazy_measure_k5():
    mu = lazy_measure(complete(5), 0, 0.5)
    assert mu.support == {0: 0.5, 1: 0.125, 2: 0.125, 3: 0.125, 4: 0.125}


def test_lazy_measure_alpha_one_and_zero():
    g = path(3)
    assert lazy_measure(g, 1, 1.0).support == {1: 1.0}
    assert lazy_measure(g, 1, 0.0).support == {0: 0.5, 2: 0.5}


def test_lazy_measure_errors():
    from curvekit.graph import Graph, GraphError

    g = Graph.from_edges([(0, 1)], vertices=range(3))
    with pytest.raises(GraphError):
        lazy_measure(g, 2)
    with pytest.raises(TransportError):
        lazy_measure(g, 0, 1.5)


def test_measure_validation():
    with pytest.raises(TransportError):
        DiscreteMeasure({0: 0.5})
    with pytest.raises(TransportError):
        DiscreteMeasure({0: 1.5, 1: -0.5})
    assert DiscreteMeasure({0: 1.0, 3: 0.0}).points() == [0]


def test_k5_w1_three_eighths():
    g = complete(5)
    d = shortest_paths(g)
    mu, nu = lazy_measure(g, 0), lazy_measure(g, 1)
    w = wasserstein1(mu, nu, d)
    assert w == pytest.approx(3 / 8, abs=1e-12)
    # basic-feasible-solution enumeration on the full 5x5 problem
    a = [mu[i] for i in range(5)]
    b = [nu[i] for i in range(5)]
    assert basic_solution_wasserstein(a, b, d) == pytest.approx(3 / 8, abs=1e-12)
    # dual certificate: f = 1 at vertex 0, else 0 is 1-Lipschitz with <f, mu - nu> = 3/8
    f = np.array([1.0, 0, 0, 0, 0])
    assert np.all(np.abs(f[:, None] - f[None, :]) <= d + 1e-15)
    assert f @ (np.array(a) - np.array(b)) == pytest.approx(3 / 8)


def test_point_masses_and_identity():
    g = path(5)
    d = shortest_paths(g)
    assert wasserstein1(DiscreteMeasure({0: 1.0}), DiscreteMeasure({4: 1.0}), d) == 4.0
    mu = lazy_measure(g, 2, 0.3)
    assert wasserstein1(mu, mu, d) == 0.0


def test_disconnected_support_raises():
    g = random_graph(np.random.default_rng(0), 6, 0.0)
    d = shortest_paths(g)
    with pytest.raises(TransportError):
        wasserstein1(DiscreteMeasure({0: 1.0}), DiscreteMeasure({1: 1.0}), d)


def test_transport_plan_is_feasible():
    rng = np.random.default_rng(1)
    a = rng.random(5)
    a /= a.sum()
    b = rng.random(7)
    b /= b.sum()
    cost = rng.random((5, 7))
    val, plan = transport_simplex(a, b, cost)
    assert plan.min() >= 0
    np.testing.assert_allclose(plan.sum(1), a, atol=1e-12)
    np.testing.assert_allclose(plan.sum(0), b, atol=1e-12)
    assert val == pytest.approx((plan * cost).sum())


@pytest.mark.parametrize("seed", range(15))
def test_small_problems_match_bfs_enumeration(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 4, size=2)
    a = rng.random(m) + 0.05
    b = rng.random(n) + 0.05
    a /= a.sum()
    b /= b.sum()
    cost = rng.integers(0, 5, size=(m, n)).astype(float)  # integer costs force degenerate ties
    val, _ = transport_simplex(a, b, cost)
    assert val == pytest.approx(basic_solution_wasserstein(a, b, cost), abs=1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_matches_dense_lp(seed):
    rng = np.random.default_rng(seed)
    g = random_connected(rng, int(rng.integers(2, 9)), 0.4, weighted=bool(seed % 2))
    d = shortest_paths(g)
    alpha = float(rng.random())
    for u, v in g.edges:
        mu, nu = lazy_measure(g, u, alpha), lazy_measure(g, v, alpha)
        assert wasserstein1(mu, nu, d) == pytest.approx(lp_wasserstein(mu.support, nu.support, d), abs=1e-8)


def _measure(rng, g, k):
    pts = rng.choice(g.n, size=min(k, g.n), replace=False)
    m = rng.random(len(pts)) + 0.01
    return DiscreteMeasure(dict(zip(pts.tolist(), (m / m.sum()).tolist())))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_symmetry_and_triangle_inequality(seed):
    rng = np.random.default_rng(seed)
    g = random_connected(rng, int(rng.integers(2, 11)), 0.3, weighted=True)
    metric = Metric(g)
    mu, nu, rho = (_measure(rng, g, 4) for _ in range(3))
    ab = wasserstein1(mu, nu, metric)
    assert ab == pytest.approx(wasserstein1(nu, mu, metric), abs=1e-9)
    assert ab <= wasserstein1(mu, rho, metric) + wasserstein1(rho, nu, metric) + 1e-9
