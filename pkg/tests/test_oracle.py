import math

import numpy as np
import pytest

from netcrit.errors import InvalidParameterError, SizeCapExceededError
from netcrit.oracle import build_laplacian, pinv_trace_tau, pseudoinverse
from netcrit.spectra import TopologySpec
from netcrit.stochastic import (
    LINK_FAILURES,
    RANDOM_LINKS,
    AsymmetricRingSpec,
    StochasticRingModel,
)
from netcrit.walks import simulate_walk_betweenness


def test_build_cycle_k3():
    np.testing.assert_array_equal(
        build_laplacian(TopologySpec.cycle(3, 1)), [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    )


def test_build_torus_3x3_block_structure():
    lap = build_laplacian(TopologySpec.torus((3, 3), 1))
    assert lap.shape == (9, 9)
    np.testing.assert_array_equal(np.diag(lap), 4)
    # diagonal blocks are the 3-cycle Laplacian plus 2I, off-diagonal blocks are -I
    np.testing.assert_array_equal(lap[:3, :3], build_laplacian(TopologySpec.cycle(3, 1)) + 2 * np.eye(3))
    np.testing.assert_array_equal(lap[:3, 3:6], -np.eye(3))
    np.testing.assert_array_equal(lap[:3, 6:9], -np.eye(3))


@pytest.mark.parametrize(
    "spec",
    [
        TopologySpec.cycle(12, 3),
        TopologySpec.torus((5, 6), 2),
        TopologySpec.torus((3, 4, 5), 1),
        StochasticRingModel(9, RANDOM_LINKS, q=0.3),
        StochasticRingModel(9, LINK_FAILURES, p=0.3),
        AsymmetricRingSpec(9, 0.4),
    ],
)
def test_laplacian_rows_sum_to_zero_and_pinv_sane(spec):
    lap = build_laplacian(spec)
    assert np.abs(lap.sum(axis=1)).max() < 1e-12
    pinv, zeros = pseudoinverse(lap)
    assert zeros == 1
    np.testing.assert_allclose(lap @ pinv @ lap, lap, atol=1e-8)
    np.testing.assert_allclose(pinv @ lap @ pinv, pinv, atol=1e-8)


def test_symmetry_of_built_matrices():
    assert np.array_equal(build_laplacian(TopologySpec.cycle(8, 2)), build_laplacian(TopologySpec.cycle(8, 2)).T)
    lap = build_laplacian(AsymmetricRingSpec(6, 0.3))
    assert not np.array_equal(lap, lap.T)


def test_pinv_trace_examples():
    assert pinv_trace_tau(build_laplacian(TopologySpec.cycle(3, 1))).tau == pytest.approx(4.0, rel=1e-12)
    assert pinv_trace_tau(build_laplacian(TopologySpec.cycle(5, 1))).tau == pytest.approx(5 * 24 / 6, rel=1e-12)
    directed = pinv_trace_tau(build_laplacian(AsymmetricRingSpec(4, 0.0)))
    assert directed.tau == pytest.approx(12.0, rel=1e-12)
    assert directed.excluded_zeros == 1


def test_pinv_trace_input_checks():
    with pytest.raises(InvalidParameterError):
        pinv_trace_tau(np.zeros((3, 4)))
    with pytest.raises(InvalidParameterError):
        pinv_trace_tau(np.eye(3))


def test_size_cap():
    with pytest.raises(SizeCapExceededError):
        build_laplacian(TopologySpec.cycle(5000, 1))
    with pytest.raises(SizeCapExceededError):
        build_laplacian(TopologySpec.cycle(50, 1), cap=49)
    with pytest.raises(SizeCapExceededError):
        pinv_trace_tau(np.zeros((10, 10)), cap=5)


def test_walks_on_triangle_match_exact_betweenness():
    # on K3 the walk s->d visits the third node 2/3 times in expectation with
    # variance 2/3; each node is intermediate for 2 ordered pairs and has degree 2
    walks = 4000
    stats = simulate_walk_betweenness(TopologySpec.cycle(3, 1), walks, seed=7)
    sigma = math.sqrt(2 * (2 / 3) / walks) / 2
    assert np.all(np.abs(stats.node_criticality - 2 / 3) < 3 * sigma)


def test_walks_vertex_transitive_cycle():
    stats = simulate_walk_betweenness(TopologySpec.cycle(11, 1), 2000, seed=2024)
    assert stats.coefficient_of_variation < 0.05
    assert stats.walk_count == 110 * 2000
    # mean hitting time on C_n from distance d is d(n - d); average over d = 1..10 is 22
    assert stats.mean_walk_length == pytest.approx(22.0, rel=0.02)


def test_walks_vertex_transitive_torus():
    stats = simulate_walk_betweenness(TopologySpec.torus((4, 4), 1), 2000, seed=5)
    b = stats.node_betweenness
    assert b.max() / b.min() < 1.1


def test_walks_are_reproducible():
    spec = TopologySpec.cycle(7, 2)
    a = simulate_walk_betweenness(spec, 300, seed=11)
    b = simulate_walk_betweenness(spec, 300, seed=11)
    c = simulate_walk_betweenness(spec, 300, seed=11, workers=3)
    d = simulate_walk_betweenness(spec, 300, seed=12)
    np.testing.assert_array_equal(a.node_betweenness, b.node_betweenness)
    np.testing.assert_array_equal(a.node_betweenness, c.node_betweenness)
    assert a.mean_walk_length == b.mean_walk_length == c.mean_walk_length
    assert not np.array_equal(a.node_betweenness, d.node_betweenness)


def test_walk_criticality_is_betweenness_over_degree():
    stats = simulate_walk_betweenness(TopologySpec.cycle(9, 2), 200, seed=1)
    np.testing.assert_array_equal(stats.node_weight, 4.0)
    np.testing.assert_array_equal(stats.node_criticality, stats.node_betweenness / stats.node_weight)
    assert np.all(np.isfinite(stats.node_betweenness))


def test_walks_need_positive_count():
    with pytest.raises(InvalidParameterError):
        simulate_walk_betweenness(TopologySpec.cycle(5, 1), 0, seed=1)
