"""Direction inference: exact symmetry, invariants, and equivariance."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from locnet.netinfer import (
    CouplingDirection,
    FunctionalNetwork,
    PairMeasures,
    build_functional_network,
    clustering_discrepancies,
    infer_network,
    infer_pair_direction,
)
from locnet.recurrence import DegenerateSeriesError, RecurrenceConfig


def random_series(rng, n_nodes, n_samples=60):
    # smooth-ish series with distinct values so thresholds are well posed
    t = np.linspace(0.0, 4 * np.pi, n_samples)
    phases = rng.uniform(0, 2 * np.pi, n_nodes)
    amps = rng.uniform(0.5, 2.0, n_nodes)
    return amps[:, None] * np.sin(t[None, :] + phases[:, None]) + 0.05 * rng.normal(
        size=(n_nodes, n_samples)
    )


def test_identical_series_are_bidirectional_with_exact_zero_delta():
    rng = np.random.default_rng(0)
    x = random_series(rng, 1)[0]
    assert infer_pair_direction(x, x) is CouplingDirection.BIDIRECTIONAL
    net, measures = infer_network(np.vstack([x, x]))
    assert measures[0].delta == 0.0
    assert measures[0].t_ij == measures[0].t_ji
    assert net.adjacency[0, 1] and net.adjacency[1, 0]


def test_identical_series_exact_even_with_zero_dead_zone():
    cfg = RecurrenceConfig(direction_tol=0.0)
    rng = np.random.default_rng(1)
    x = random_series(rng, 1)[0]
    assert infer_pair_direction(x, x, cfg) is CouplingDirection.BIDIRECTIONAL


@given(seed=st.integers(0, 2**31), n=st.integers(2, 6))
@settings(max_examples=25, deadline=None)
def test_network_invariants(seed, n):
    rng = np.random.default_rng(seed)
    net, measures = infer_network(random_series(rng, n))
    net.validate()  # no self-loops, every pair linked somewhere
    assert len(measures) == n * (n - 1) // 2
    for pm in measures:
        assert pm.i < pm.j
        assert pm.epsilon > 0
        fwd, bwd = net.adjacency[pm.i, pm.j], net.adjacency[pm.j, pm.i]
        if pm.direction is CouplingDirection.FORWARD:
            assert fwd and not bwd
        elif pm.direction is CouplingDirection.BACKWARD:
            assert bwd and not fwd
        else:
            assert fwd and bwd


@given(seed=st.integers(0, 2**31), n=st.integers(2, 5))
@settings(max_examples=15, deadline=None)
def test_node_relabeling_equivariance(seed, n):
    # rotating (or arbitrarily permuting) the node order must rotate the
    # inferred network with it, exactly
    rng = np.random.default_rng(seed)
    series = random_series(rng, n)
    base, _ = infer_network(series)
    perm = rng.permutation(n)
    permuted, _ = infer_network(series[perm])
    assert np.array_equal(permuted.adjacency, base.adjacency[np.ix_(perm, perm)])


def test_ring_rotation_equivariance_exact():
    rng = np.random.default_rng(99)
    series = random_series(rng, 5)
    base, _ = infer_network(series)
    for shift in range(1, 5):
        rolled, _ = infer_network(np.roll(series, shift, axis=0))
        assert np.array_equal(
            rolled.adjacency, np.roll(np.roll(base.adjacency, shift, 0), shift, 1)
        )


def test_constant_series_is_named_in_error():
    x = np.zeros(50)
    y = np.sin(np.linspace(0, 6, 50))
    with pytest.raises(DegenerateSeriesError, match="node 1"):
        infer_pair_direction(x, y)
    with pytest.raises(DegenerateSeriesError, match="node 2"):
        infer_network(np.vstack([y, x]))


def test_series_shape_validation():
    with pytest.raises(ValueError):
        infer_pair_direction(np.zeros(10), np.zeros(11))
    with pytest.raises(ValueError):
        infer_network(np.zeros((1, 50)))


def test_build_functional_network_returns_first_element():
    rng = np.random.default_rng(3)
    series = random_series(rng, 3)
    net = build_functional_network(series)
    ref, _ = infer_network(series)
    assert np.array_equal(net.adjacency, ref.adjacency)


def test_network_json_round_trip():
    rng = np.random.default_rng(4)
    net, _ = infer_network(random_series(rng, 4))
    back = FunctionalNetwork.from_json_dict(net.to_json_dict())
    assert back.n_nodes == net.n_nodes
    assert np.array_equal(back.adjacency, net.adjacency)


def test_network_file_output(tmp_path):
    rng = np.random.default_rng(5)
    net, _ = infer_network(random_series(rng, 3))
    edge_path = tmp_path / "edges.txt"
    json_path = tmp_path / "net.json"
    net.write_edgelist(edge_path)
    net.write_json(json_path)
    lines = edge_path.read_text().strip().splitlines()
    assert len(lines) == len(net.edges())
    for line, (i, j) in zip(lines, net.edges()):
        assert line == f"{i + 1} {j + 1}"
    import json

    data = json.loads(json_path.read_text())
    assert data["n_nodes"] == 3
    assert data["nodes"] == [1, 2, 3]


def test_validate_flags_self_loop_and_missing_pair():
    adj = np.eye(2, dtype=bool)
    with pytest.raises(ValueError, match="self-loop"):
        FunctionalNetwork(n_nodes=2, adjacency=adj).validate()
    empty = FunctionalNetwork(n_nodes=2, adjacency=np.zeros((2, 2), dtype=bool))
    with pytest.raises(ValueError, match="no link"):
        empty.validate()


def test_adjacency_shape_checked():
    with pytest.raises(ValueError):
        FunctionalNetwork(n_nodes=3, adjacency=np.zeros((2, 2), dtype=bool))


def _pm(delta, dc):
    t_ji = 0.5
    c_ji = 0.5
    return PairMeasures(
        i=0,
        j=1,
        epsilon=1.0,
        t_ij=t_ji + delta,
        t_ji=t_ji,
        c_ij=c_ji + dc,
        c_ji=c_ji,
        direction=CouplingDirection.FORWARD,
    )


def test_clustering_discrepancy_counter():
    tol = 0.01
    agree = _pm(0.1, 0.2)
    oppose = _pm(0.1, -0.2)
    inside = _pm(0.001, -0.5)  # transitivity inside dead zone: not counted
    assert clustering_discrepancies([agree], tol) == 0
    assert clustering_discrepancies([agree, oppose], tol) == 1
    assert clustering_discrepancies([inside], tol) == 0
