import math

import numpy as np
import pytest

from conftest import squared_euclidean
from dissim_core import NumericalError, center_gram, decompose, gram_decomposition
from power_embed import (GaussianCluster, PowerRepresentation, euclideanize,
                         pairwise_power_distances, power_distance, power_radius,
                         power_representation, recover_centers,
                         silhouette_gaussian, silhouette_monte_carlo,
                         silhouette_normalized, silhouette_tradeoff)


def test_power_distance_of_disjoint_and_overlapping_balls():
    assert power_distance([0, 0], 1.0, [3, 4], 2.0) == pytest.approx(16.0)
    assert power_distance([0.0], 1.0, [1.0], 1.0) == pytest.approx(-3.0)


def test_power_distance_validates_inputs():
    with pytest.raises(ValueError):
        power_distance([0, 0], 1.0, [0, 0, 0], 1.0)
    with pytest.raises(ValueError):
        power_distance([0], -1.0, [1], 0.0)


def test_three_point_power_representation(three_point):
    dec = gram_decomposition(three_point)
    r = power_radius(dec)
    assert r == pytest.approx(math.sqrt(1.0 / 12.0), abs=1e-9)

    E = euclideanize(three_point, r)
    expected = np.array([[0, 4, 4], [4, 0, 16], [4, 16, 0]]) / 3.0
    np.testing.assert_allclose(E, expected, atol=1e-9)
    np.testing.assert_allclose(decompose(center_gram(E)).eigenvalues, [8 / 3, 0, 0], atol=1e-9)

    centers = recover_centers(E)
    assert centers.shape == (3, 1)
    np.testing.assert_allclose(np.sort(centers[:, 0]), [-2 / math.sqrt(3), 0, 2 / math.sqrt(3)], atol=1e-9)
    assert centers[0, 0] == pytest.approx(0.0, abs=1e-9)


def test_radius_rules(three_point):
    dec = gram_decomposition(three_point)
    assert power_radius(dec, 'half-root') == pytest.approx(math.sqrt(1 / 6) / 2)
    with pytest.raises(ValueError):
        power_radius(dec, 'guess')


def test_euclidean_input_has_zero_radius():
    X = np.random.default_rng(2).normal(size=(8, 3))
    D = squared_euclidean(X)
    rep = power_representation(D)
    assert rep.radius == 0.0
    np.testing.assert_allclose(pairwise_power_distances(rep), D, atol=1e-9)


def test_power_representation_reproduces_random_matrices(random_corpus):
    for D in random_corpus:
        dec = gram_decomposition(D)
        rep = power_representation(D, dec=dec)
        scale = max(1.0, np.max(np.abs(D)))
        np.testing.assert_allclose(pairwise_power_distances(rep), D, atol=1e-6 * scale)


def test_radius_is_sharp(random_corpus):
    for D in random_corpus:
        dec = gram_decomposition(D)
        r = power_radius(dec)
        assert r > 0
        shrunk = decompose(center_gram(euclideanize(D, 0.99 * r)))
        assert shrunk.smallest < -shrunk.tau


def test_recover_centers_rejects_non_euclidean(three_point):
    with pytest.raises(NumericalError):
        recover_centers(three_point)


def test_radius_override_is_carried(three_point):
    rep = power_representation(three_point, radius=1.0)
    assert rep.radius == 1.0
    np.testing.assert_allclose(pairwise_power_distances(rep), three_point.entries, atol=1e-9)


def test_power_matrix_diagonal():
    rep = PowerRepresentation(np.zeros((2, 1)), 0.5)
    assert np.all(np.diag(pairwise_power_distances(rep)) == 0.0)
    np.testing.assert_allclose(np.diag(pairwise_power_distances(rep, hollow=False)), -1.0)


def test_silhouette_matches_power_distance():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        dim = int(rng.integers(1, 6))
        a = GaussianCluster(rng.normal(size=dim), float(rng.uniform(0, 3)))
        b = GaussianCluster(rng.normal(size=dim), float(rng.uniform(0, 3)))
        assert silhouette_gaussian(a, b) == power_distance(a.mean, a.sigma, b.mean, b.sigma)


def test_normalized_silhouette_extremes():
    delta = GaussianCluster(np.zeros(2), 0.0)
    assert silhouette_normalized(delta, delta) == -1.0
    wide = GaussianCluster(np.zeros(2), 1.5)
    assert silhouette_normalized(wide, wide) == pytest.approx(-1.0)
    far = GaussianCluster(np.array([5.0, 0.0]), 0.0)
    assert silhouette_normalized(delta, far) == pytest.approx(1.0)


def test_tradeoff_score():
    a = GaussianCluster(np.zeros(2), 1.0)
    b = GaussianCluster(np.array([3.0, 0.0]), 2.0)
    assert silhouette_tradeoff(a, b, c=1.0) == pytest.approx(9.0)
    assert silhouette_tradeoff(a, b, c=2.0) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        silhouette_tradeoff(a, b, c=0.5)


def test_monte_carlo_silhouette_agrees_with_closed_form():
    a = GaussianCluster(np.array([0.0, 1.0, 0.0]), 1.2)
    b = GaussianCluster(np.array([2.0, -1.0, 0.5]), 0.7)
    estimate, stderr = silhouette_monte_carlo(a, b, samples=100000, seed=5)
    assert stderr > 0
    assert abs(estimate - silhouette_gaussian(a, b)) <= 3 * stderr


def test_negative_sigma_rejected():
    with pytest.raises(ValueError):
        GaussianCluster(np.zeros(2), -0.1)


def test_recover_unit_square():
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    E = squared_euclidean(corners)
    centers = recover_centers(E)
    assert centers.shape == (4, 2)
    np.testing.assert_allclose(squared_euclidean(centers), E, atol=1e-9)


def test_recover_coincident_points():
    assert recover_centers(np.zeros((3, 3))).shape == (3, 0)
    rep = power_representation(np.zeros((3, 3)))
    assert rep.radius == 0.0
    assert not pairwise_power_distances(rep).any()


def test_half_root_radius_clamps_negative_mass(three_point):
    rep = power_representation(three_point, rule='half-root')
    assert rep.radius == pytest.approx(math.sqrt(1 / 6) / 2)
    assert rep.clamped
    assert rep.discarded == pytest.approx(1 / 12)
    assert rep.dim == 1


def test_minimal_radius_discards_nothing(three_point):
    rep = power_representation(three_point)
    assert not rep.clamped
    assert rep.discarded == 0.0


def test_recover_centers_can_clamp(three_point):
    assert recover_centers(three_point, clamp=True).shape == (3, 1)
