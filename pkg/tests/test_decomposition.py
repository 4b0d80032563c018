from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmoead.decomposition import (
    Scalarization,
    generate_weight_vectors,
    lattice_size,
    neighborhoods,
    scalarize,
    update_ideal,
)

LATTICE_H2_M3 = [
    (0.0, 0.0, 1.0),
    (0.0, 0.5, 0.5),
    (0.0, 1.0, 0.0),
    (0.5, 0.0, 0.5),
    (0.5, 0.5, 0.0),
    (1.0, 0.0, 0.0),
]


def test_lattice_size_values():
    assert lattice_size(2, 3) == 6
    assert lattice_size(23, 3) == 300
    assert lattice_size(299, 2) == 300


def test_two_objective_weights_are_uniform():
    W = generate_weight_vectors(300, 2)
    assert W.shape == (300, 2)
    np.testing.assert_allclose(W.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.diff(W[:, 0]), 1.0 / 299.0, atol=1e-12)
    assert W[0, 0] == 0.0 and W[-1, 0] == 1.0


def test_three_objective_lattice_exact():
    W = generate_weight_vectors(6, 3)
    assert sorted(map(tuple, W.tolist())) == LATTICE_H2_M3


def test_three_objective_padding():
    W = generate_weight_vectors(305, 3, np.random.default_rng(7))
    assert W.shape == (305, 3)
    np.testing.assert_allclose(W.sum(axis=1), 1.0, atol=1e-12)
    assert np.all(W >= 0.0)
    # first 300 rows are the full resolution-23 lattice
    assert W[:300, 0].max() == 1.0


def test_weight_count_lower_bound():
    with pytest.raises(ValueError):
        generate_weight_vectors(2, 3)


def test_neighborhoods_contain_self_first():
    W = generate_weight_vectors(50, 2)
    B = neighborhoods(W, 10)
    assert B.shape == (50, 10)
    np.testing.assert_array_equal(B[:, 0], np.arange(50))
    # uniform 2-objective weights: neighbors are contiguous in index
    for i in range(50):
        span = np.sort(B[i])
        assert span[-1] - span[0] == 9


def test_neighborhood_size_validation():
    W = generate_weight_vectors(10, 2)
    with pytest.raises(ValueError):
        neighborhoods(W, 11)


def test_tchebycheff_example():
    val = scalarize(
        np.array([1.0, 3.0]),
        np.array([0.5, 0.5]),
        np.zeros(2),
        Scalarization.TCHEBYCHEFF,
    )
    assert val == 1.5


def test_weighted_sum_example():
    val = scalarize(
        np.array([1.0, 3.0]),
        np.array([0.5, 0.5]),
        np.zeros(2),
        Scalarization.WEIGHTED_SUM,
    )
    assert val == 2.0


def test_pbi_example():
    val = scalarize(
        np.array([2.0, 1.0]),
        np.array([1.0, 0.0]),
        np.zeros(2),
        Scalarization.PBI,
        theta=5.0,
    )
    assert val == pytest.approx(7.0, abs=1e-12)


def test_tchebycheff_zero_weight_guard():
    # a zero weight must not erase the objective entirely
    val = scalarize(
        np.array([0.0, 100.0]),
        np.array([1.0, 0.0]),
        np.zeros(2),
        Scalarization.TCHEBYCHEFF,
    )
    assert val == pytest.approx(100.0 * 1e-6)


def test_scalarize_batched_matches_scalar():
    rng = np.random.default_rng(0)
    F = rng.random((8, 2)) * 3.0
    lam = rng.random((8, 2)) + 0.1
    z = np.array([0.1, -0.2])
    for method in Scalarization:
        batch = scalarize(F, lam, z, method)
        single = np.array([scalarize(F[i], lam[i], z, method) for i in range(8)])
        np.testing.assert_allclose(batch, single, atol=1e-14)
        assert isinstance(scalarize(F[0], lam[0], z, method), float)


def test_scalarize_broadcasts_one_point_many_weights():
    F = np.array([1.0, 2.0])
    lam = generate_weight_vectors(5, 2)
    vals = scalarize(F, lam, np.zeros(2), Scalarization.WEIGHTED_SUM)
    np.testing.assert_allclose(vals, lam @ F, atol=1e-14)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=40, deadline=None)
def test_tchebycheff_at_ideal_is_zero(seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=3)
    lam = rng.random(3) + 0.01
    assert scalarize(z, lam, z, Scalarization.TCHEBYCHEFF) == 0.0


def test_update_ideal():
    z = update_ideal(np.array([1.0, 2.0]), np.array([2.0, 1.0]))
    np.testing.assert_array_equal(z, [1.0, 1.0])
    with pytest.raises(ValueError):
        update_ideal(np.array([1.0]), np.array([1.0, 2.0]))
