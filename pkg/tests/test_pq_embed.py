import math

import numpy as np
import pytest

from conftest import squared_euclidean
from dissim_core import gram_decomposition
from pq_embed import (NormRatioSample, PseudoEuclideanEmbedding, absolute_coords,
                      distortion_factor, distortion_factors, embed_pq, euclid_interval,
                      expected_norm_ratio, max_negative_dim, norm_ratio_sample,
                      pairwise_euclid_intervals, pairwise_pq_intervals, pq_interval)


def test_embedding_reproduces_random_matrices(random_corpus):
    for D in random_corpus:
        emb = embed_pq(gram_decomposition(D))
        np.testing.assert_allclose(pairwise_pq_intervals(emb), D, rtol=1e-6, atol=1e-9)


def test_three_point_intervals(three_point):
    emb = embed_pq(gram_decomposition(three_point))
    assert (emb.p, emb.q) == (1, 1)
    assert pq_interval(emb, 0, 1) == pytest.approx(1.0)
    assert euclid_interval(emb, 0, 1) == pytest.approx(1.5)
    assert distortion_factor(emb, 0, 1) == pytest.approx(1.5)
    assert pq_interval(emb, 1, 2) == pytest.approx(5.0)
    assert distortion_factor(emb, 1, 2) == pytest.approx(1.0)


def test_three_point_coordinates(three_point):
    emb = embed_pq(gram_decomposition(three_point))
    pos = emb.pos_coords[:, 0] * np.sign(emb.pos_coords[1, 0])
    neg = emb.neg_coords[:, 0] * np.sign(emb.neg_coords[0, 0])
    np.testing.assert_allclose(pos, math.sqrt(5) / 2 * np.array([0, 1, -1]), atol=1e-9)
    np.testing.assert_allclose(neg, np.array([2, -1, -1]) / 6, atol=1e-9)


def test_euclidean_input_has_unit_distortion():
    X = np.random.default_rng(1).normal(size=(10, 4))
    emb = embed_pq(gram_decomposition(squared_euclidean(X)))
    assert emb.q == 0
    np.testing.assert_allclose(distortion_factors(emb), 1.0)


def test_null_pair_has_infinite_distortion():
    emb = PseudoEuclideanEmbedding(np.array([[0.0], [1.0]]), np.array([[0.0], [1.0]]))
    assert pq_interval(emb, 0, 1) == 0.0
    assert distortion_factor(emb, 0, 1) == math.inf
    assert math.isinf(distortion_factors(emb)[0, 1])


def test_coincident_points_have_unit_distortion():
    emb = PseudoEuclideanEmbedding(np.array([[1.0], [1.0]]), np.array([[2.0], [2.0]]))
    assert distortion_factor(emb, 0, 1) == 1.0


def test_distortion_needs_distinct_points(three_point):
    emb = embed_pq(gram_decomposition(three_point))
    with pytest.raises(ValueError):
        distortion_factor(emb, 1, 1)
    with pytest.raises(IndexError):
        pq_interval(emb, 0, 3)


def test_vectorised_factors_match_scalar(random_corpus):
    emb = embed_pq(gram_decomposition(random_corpus[0]))
    factors = distortion_factors(emb)
    euclid = pairwise_euclid_intervals(emb)
    for i, j in [(0, 1), (1, 3), (2, 4)]:
        assert factors[i, j] == pytest.approx(distortion_factor(emb, i, j))
        assert euclid[i, j] == pytest.approx(euclid_interval(emb, i, j))
    assert np.all(factors >= 1.0 - 1e-12)


def test_absolute_coords_stack_both_blocks(three_point):
    emb = embed_pq(gram_decomposition(three_point))
    assert absolute_coords(emb).shape == (3, 2)


def test_mismatched_blocks_rejected():
    with pytest.raises(ValueError):
        PseudoEuclideanEmbedding(np.zeros((3, 1)), np.zeros((2, 1)))


def test_expected_norm_ratio():
    assert expected_norm_ratio(300, 100) == 2.0
    assert expected_norm_ratio(5, 5) is None
    assert max_negative_dim(300, 2.0) == 99
    assert max_negative_dim(301, 2.0) == 100
    with pytest.raises(ValueError):
        max_negative_dim(10, 1.0)


def test_norm_ratio_concentrates_below_bound():
    # P(|ratio| < 2.2) >= 0.99 where (p+q)/(p-q) = 4/3 sits well below 2.2
    sample = norm_ratio_sample(350, 50, trials=10000, seed=0)
    assert sample.fraction_below(2.2) >= 0.99
    assert np.mean(sample.samples) == pytest.approx(400 / 300, rel=0.05)


def test_norm_ratio_mean_near_expected():
    sample = norm_ratio_sample(300, 100, trials=10000, seed=1)
    assert sample.expected_ratio == 2.0
    assert np.mean(sample.samples) == pytest.approx(2.0, rel=0.05)
    summary = sample.summary(c=2.2)
    assert summary['trials'] == 10000
    assert 0.0 < summary['fraction_below_c'] < 1.0


def test_norm_ratio_flags_balanced_signature(capsys):
    sample = norm_ratio_sample(5, 5, trials=50, seed=0)
    assert sample.degenerate
    assert sample.expected_ratio is None
    assert '⚠️' in capsys.readouterr().out


def test_norm_ratio_rejects_empty_dimension():
    with pytest.raises(ValueError):
        norm_ratio_sample(0, 0, trials=10, seed=0)


def test_two_point_embedding():
    emb = embed_pq(gram_decomposition(np.array([[0.0, 2.0], [2.0, 0.0]])))
    assert (emb.p, emb.q) == (1, 0)
    assert pq_interval(emb, 0, 1) == pytest.approx(2.0)
    assert euclid_interval(emb, 0, 1) == pq_interval(emb, 0, 1)


def test_zero_matrix_embedding_is_empty():
    emb = embed_pq(gram_decomposition(np.zeros((4, 4))))
    assert (emb.n, emb.p, emb.q) == (4, 0, 0)
    assert pq_interval(emb, 0, 3) == 0.0


def test_euclidean_signature_ratio_is_one():
    sample = norm_ratio_sample(7, 0, trials=100, seed=2)
    np.testing.assert_array_equal(sample.samples, 1.0)


def test_negative_ratios_count_by_magnitude():
    sample = NormRatioSample(3, 2, np.array([-5.0, 1.5, 3.0, -1.0]), 5.0)
    assert sample.fraction_below(2.2) == 0.5
    assert sample.fraction_negative == 0.5


def test_small_signature_has_negative_ratios():
    sample = norm_ratio_sample(3, 2, trials=10000, seed=0)
    assert sample.fraction_negative > 0.2
    assert sample.fraction_below(2.2) == pytest.approx(np.mean(np.abs(sample.samples) < 2.2))
